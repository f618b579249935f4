"""Unit tests for the probabilistic relaxation."""

import numpy as np
import pytest


class TestEmbedding:
    """Tests for embed, harden, loss and gd_step."""

    def test_embed_values(self):
        """Test the sigmoid at 0 and its saturation."""
        from src.relaxation import embed

        P = embed(np.array([0.0, 1000.0, -1000.0]))
        assert P[0] == pytest.approx(0.5)
        assert P[1] == pytest.approx(1.0)
        assert P[2] == pytest.approx(0.0, abs=1e-15)
        assert np.all(np.isfinite(P))

    def test_harden_threshold(self):
        """Test V >= 0 hardens to 1."""
        from src.relaxation import harden

        np.testing.assert_array_equal(harden(np.array([-0.1, 0.0, 2.0])), [0, 1, 1])

    def test_loss(self):
        """Test the squared error per row and in total."""
        from src.relaxation import loss

        total, per_row = loss(np.array([[0.5, 1.0], [0.0, 0.0]]), np.array([1.0, 0.0]))
        np.testing.assert_allclose(per_row, [1.25, 1.0])
        assert total == pytest.approx(2.25)

    def test_loss_shape_checked(self):
        """Test mismatched targets raise RelaxationError."""
        from src.relaxation import RelaxationError, loss

        with pytest.raises(RelaxationError):
            loss(np.zeros((2, 2)), np.zeros(3))

    def test_gd_step(self):
        """Test the plain update."""
        from src.relaxation import RelaxationError, gd_step

        np.testing.assert_allclose(gd_step(np.array([1.0]), np.array([0.5]), 10.0), [-4.0])
        with pytest.raises(RelaxationError):
            gd_step(np.zeros(2), np.zeros(3), 1.0)


class TestRelaxedCircuit:
    """Tests for forward and backward passes."""

    def test_workflow_forward(self, workflow_pipeline):
        """Test P(x6)=0.5, P(x13)=1, P(x14)=0 gives P(x10)=0.5 and loss 0.25."""
        from src.relaxation import RelaxedCircuit, loss

        _, _, circuit = workflow_pipeline
        relaxed = RelaxedCircuit(circuit, input_vars=[6, 13, 14])
        Y, tape = relaxed.forward(np.array([[0.5, 1.0, 0.0]]))
        assert Y.shape == (1, 1)
        assert Y[0, 0] == pytest.approx(0.5)
        total, _ = loss(Y, relaxed.targets)
        assert total == pytest.approx(0.25)
        assert tape.batch_size == 1

    def test_corners_are_exact(self, workflow_pipeline):
        """Test {0,1} inputs reproduce the discrete circuit exactly."""
        from src.circuit import evaluate_batch
        from src.relaxation import RelaxedCircuit
        from tests.generators import all_assignments

        _, _, circuit = workflow_pipeline
        inputs = all_assignments(len(circuit.input_vars))
        relaxed = RelaxedCircuit(circuit, prune=False)
        _, tape = relaxed.forward(inputs.astype(float))
        np.testing.assert_array_equal(tape.values, evaluate_batch(circuit, inputs).astype(float))

    def test_forward_range_checked(self, workflow_pipeline):
        """Test probabilities outside [0, 1] are rejected."""
        from src.relaxation import RelaxationError, RelaxedCircuit

        _, _, circuit = workflow_pipeline
        relaxed = RelaxedCircuit(circuit, input_vars=[6, 13, 14])
        with pytest.raises(RelaxationError):
            relaxed.forward(np.array([[0.5, 1.5, 0.0]]))
        with pytest.raises(RelaxationError):
            relaxed.forward(np.array([[0.5, 1.0]]))

    def test_unknown_input(self, workflow_pipeline):
        """Test input_vars must be primary inputs."""
        from src.relaxation import RelaxationError, RelaxedCircuit

        _, _, circuit = workflow_pipeline
        with pytest.raises(RelaxationError, match="x10"):
            RelaxedCircuit(circuit, input_vars=[10])

    def test_gradient_direction(self, workflow_pipeline):
        """Test the gradient on x13 points towards raising x10 when x9 is likely."""
        from src.relaxation import RelaxedCircuit

        _, _, circuit = workflow_pipeline
        relaxed = RelaxedCircuit(circuit, input_vars=[6, 13, 14])
        P = np.array([[0.1, 0.5, 0.5]])
        Y, tape = relaxed.forward(P)
        grad = relaxed.backward(tape, Y, relaxed.targets)
        # x9 = NOT x6 is likely 1, so x13 drives x10: loss falls as P(x13) rises
        assert grad[0, 1] < 0
        assert abs(grad[0, 1]) > abs(grad[0, 2])

    def test_pruning_keeps_outputs(self, random_circuit_factory):
        """Test the pruned and full schedules give the same outputs and gradients."""
        from src.relaxation import RelaxedCircuit

        rng = np.random.default_rng(23)
        circuit = random_circuit_factory(rng, num_inputs=5, num_gates=20, num_outputs=1)
        V = rng.normal(size=(8, 5))
        full = RelaxedCircuit(circuit, prune=False).loss_and_grad(V)
        pruned = RelaxedCircuit(circuit, prune=True).loss_and_grad(V)
        assert full[0] == pytest.approx(pruned[0])
        np.testing.assert_allclose(full[2], pruned[2])

    def test_workers_are_deterministic(self, random_circuit_factory):
        """Test threaded row blocks give bit-identical results."""
        from src.relaxation import RelaxedCircuit

        rng = np.random.default_rng(29)
        circuit = random_circuit_factory(rng, num_inputs=6, num_gates=25)
        V = rng.normal(size=(101, 6))
        single = RelaxedCircuit(circuit, workers=1).loss_and_grad(V)
        threaded = RelaxedCircuit(circuit, workers=4).loss_and_grad(V)
        np.testing.assert_array_equal(single[1], threaded[1])
        np.testing.assert_array_equal(single[2], threaded[2])

    def test_float32(self, workflow_pipeline):
        """Test the single-precision mode keeps its dtype."""
        from src.relaxation import RelaxedCircuit

        _, _, circuit = workflow_pipeline
        relaxed = RelaxedCircuit(circuit, input_vars=[6, 13, 14], dtype="float32")
        _, _, grad = relaxed.loss_and_grad(np.zeros((4, 3)))
        assert grad.dtype == np.float32


def row_loss_differences(relaxed, X, h, soft=True):
    """
    Central differences of each row's loss with respect to each input.

    Rows are evaluated independently, so one column is perturbed in every
    row at once. With `soft` the inputs are soft values passed through
    `embed`, otherwise they are probabilities.
    """
    from src.relaxation import embed, loss

    def row_losses(Z):
        Y, _ = relaxed.forward(embed(Z) if soft else Z)
        return loss(Y, relaxed.targets)[1]

    numeric = np.zeros_like(X)
    for j in range(X.shape[1]):
        step = np.zeros_like(X)
        step[:, j] = h
        numeric[:, j] = (row_losses(X + step) - row_losses(X - step)) / (2 * h)
    return numeric


class TestGradientChecks:
    """Analytic gradients against finite differences and exact corners."""

    @pytest.mark.parametrize("kind", ["NOT", "AND2", "OR2", "XOR2", "XNOR2"])
    @pytest.mark.parametrize("target", [0, 1])
    def test_single_gate(self, kind, target):
        """Test each gate kind in isolation, in probability and soft space."""
        from src.logic import GateKind
        from src.relaxation import RelaxedCircuit, loss
        from tests.generators import build_gate_circuit

        gate = GateKind[kind]
        args = [0] if gate is GateKind.NOT else [0, 1]
        circuit = build_gate_circuit(2, [(gate, args)], {3: target})
        relaxed = RelaxedCircuit(circuit, prune=False)
        rng = np.random.default_rng(31)

        P = rng.uniform(0.2, 0.8, size=(10, 2))
        Y, tape = relaxed.forward(P)
        grad = relaxed.backward(tape, Y, relaxed.targets)
        numeric = row_loss_differences(relaxed, P, 1e-4, soft=False)
        np.testing.assert_allclose(grad, numeric, rtol=1e-5, atol=1e-8)
        if gate is GateKind.NOT:
            np.testing.assert_array_equal(grad[:, 1], 0.0)

        V = rng.uniform(-2.0, 2.0, size=(10, 2))
        total, per_row, soft_grad = relaxed.loss_and_grad(V)
        np.testing.assert_allclose(soft_grad, row_loss_differences(relaxed, V, 1e-4), rtol=1e-5, atol=1e-8)
        assert total == pytest.approx(per_row.sum())

    def test_random_circuits(self, random_circuit_factory):
        """Test 50 random circuits at 10 points each."""
        from src.relaxation import RelaxedCircuit

        rng = np.random.default_rng(37)
        for trial in range(50):
            num_inputs = int(rng.integers(2, 11))
            num_gates = int(rng.integers(5, 50))
            num_outputs = int(rng.integers(1, 4))
            circuit = random_circuit_factory(rng, num_inputs, num_gates, num_outputs)
            relaxed = RelaxedCircuit(circuit, prune=False)
            V = rng.uniform(-2.0, 2.0, size=(10, num_inputs))
            _, _, grad = relaxed.loss_and_grad(V)
            numeric = row_loss_differences(relaxed, V, 1e-4)
            np.testing.assert_allclose(grad, numeric, rtol=1e-4, atol=1e-7, err_msg=f"trial {trial}")

    @pytest.mark.parametrize("num_inputs", [1, 3, 6, 9, 12])
    def test_corners_on_random_circuits(self, random_circuit_factory, num_inputs):
        """Test every 0/1 input row reproduces the discrete circuit exactly."""
        from src.circuit import evaluate_batch
        from src.relaxation import RelaxedCircuit
        from tests.generators import all_assignments

        rng = np.random.default_rng(41 + num_inputs)
        circuit = random_circuit_factory(rng, num_inputs, num_gates=40, num_outputs=2)
        inputs = all_assignments(num_inputs)
        _, tape = RelaxedCircuit(circuit, prune=False).forward(inputs.astype(float))
        np.testing.assert_array_equal(tape.values, evaluate_batch(circuit, inputs).astype(float))

    def test_rows_are_independent(self, random_circuit_factory):
        """Test permuting rows permutes results, and a lone row matches its batch row."""
        from src.relaxation import RelaxedCircuit

        rng = np.random.default_rng(43)
        circuit = random_circuit_factory(rng, num_inputs=7, num_gates=30, num_outputs=2)
        relaxed = RelaxedCircuit(circuit)
        V = rng.normal(size=(50, 7))
        perm = rng.permutation(50)

        _, per_row, grad = relaxed.loss_and_grad(V)
        _, per_row_perm, grad_perm = relaxed.loss_and_grad(V[perm])
        np.testing.assert_allclose(per_row_perm, per_row[perm], rtol=1e-12)
        np.testing.assert_allclose(grad_perm, grad[perm], rtol=1e-12)

        _, single_row, single_grad = relaxed.loss_and_grad(V[7:8])
        np.testing.assert_allclose(single_row, per_row[7:8], rtol=1e-12)
        np.testing.assert_allclose(single_grad, grad[7:8], rtol=1e-12)

    def test_de_morgan(self):
        """Test the relaxed gates keep De Morgan's laws and XNOR = NOT XOR."""
        from src.logic import GateKind
        from src.relaxation import RelaxedCircuit
        from tests.generators import build_gate_circuit

        gates = [
            (GateKind.AND2, [0, 1]),   # x3, node 2
            (GateKind.NOT, [2]),       # x4 = ~(a & b)
            (GateKind.NOT, [0]),       # x5, node 4
            (GateKind.NOT, [1]),       # x6, node 5
            (GateKind.OR2, [4, 5]),    # x7 = ~a | ~b
            (GateKind.OR2, [0, 1]),    # x8, node 7
            (GateKind.NOT, [7]),       # x9 = ~(a | b)
            (GateKind.AND2, [4, 5]),   # x10 = ~a & ~b
            (GateKind.XOR2, [0, 1]),   # x11, node 10
            (GateKind.NOT, [10]),      # x12 = ~(a ^ b)
            (GateKind.XNOR2, [0, 1]),  # x13
        ]
        circuit = build_gate_circuit(2, gates, {4: 1, 7: 1, 9: 1, 10: 1, 12: 1, 13: 1})
        P = np.random.default_rng(47).uniform(0.0, 1.0, size=(100, 2))
        Y, _ = RelaxedCircuit(circuit).forward(P)
        np.testing.assert_allclose(Y[:, 0], Y[:, 1], atol=1e-12)
        np.testing.assert_allclose(Y[:, 2], Y[:, 3], atol=1e-12)
        np.testing.assert_allclose(Y[:, 4], Y[:, 5], atol=1e-12)
