"""
Probabilistic Relaxation

Differentiable relaxation of a gate circuit. Every gate output is the
probability that the gate is 1 when its operands are independent
Bernoulli variables:

    NOT   1 - a
    AND2  a * b
    OR2   1 - (1 - a)(1 - b)
    XOR2  (1 - a) b + a (1 - b)
    XNOR2 a b + (1 - a)(1 - b)

Soft inputs V are mapped to probabilities with the logistic sigmoid, the
loss is the squared distance of the outputs to their targets, and
gradients are obtained by one reverse sweep over the recorded node values.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, Set, Tuple

import numpy as np

from ..circuit.netlist import Circuit
from ..logic.decompose import GateKind


logger = logging.getLogger(__name__)

# exp(40) is finite in float32 and sigmoid(40) rounds to 1.0 in float64
SATURATION = 40.0


class RelaxationError(Exception):
    """Exception raised for shape or range violations in the relaxation."""
    pass


def embed(V: np.ndarray) -> np.ndarray:
    """Sigmoid embedding P = 1 / (1 + exp(-V)), with V clipped to +-40."""
    V = np.asarray(V)
    return 1.0 / (1.0 + np.exp(-np.clip(V, -SATURATION, SATURATION)))


def harden(V: np.ndarray) -> np.ndarray:
    """Binary values of soft inputs: 1 iff V >= 0."""
    return (np.asarray(V) >= 0).astype(np.uint8)


def loss(Y: np.ndarray, T: np.ndarray) -> Tuple[float, np.ndarray]:
    """
    Squared error of outputs against targets.

    Args:
        Y: Output probabilities, shape (batch, m).
        T: Targets, shape (m,), broadcast over rows.

    Returns:
        (total, per_row) where per_row[i] = sum_j (Y[i, j] - T[j])^2.
    """
    Y = np.asarray(Y)
    T = np.asarray(T, dtype=Y.dtype)
    if Y.ndim != 2 or T.shape != (Y.shape[1],):
        raise RelaxationError(f"Outputs {Y.shape} do not match targets {T.shape}")
    diff = Y - T[np.newaxis, :]
    per_row = np.einsum("ij,ij->i", diff, diff)
    return float(per_row.sum()), per_row


def gd_step(V: np.ndarray, grad: np.ndarray, learning_rate: float) -> np.ndarray:
    """Plain gradient descent update V - lr * grad."""
    if np.shape(V) != np.shape(grad):
        raise RelaxationError(f"Gradient {np.shape(grad)} does not match inputs {np.shape(V)}")
    return V - learning_rate * grad


@dataclass
class ForwardTape:
    """Node values of one forward pass, shape (num_nodes, batch)."""
    values: np.ndarray
    probabilities: np.ndarray

    @property
    def batch_size(self) -> int:
        return self.values.shape[1]


class RelaxedCircuit:
    """
    Batched probabilistic evaluation and reverse-mode gradients of a circuit.

    Columns of the probability matrix follow `input_vars`; other INPUT nodes
    read `free_probability`. With `prune` set, only nodes in the fan-in cone
    of the outputs are computed.

    Usage:
        relaxed = RelaxedCircuit(circuit, input_vars=[6, 13, 14])
        P = embed(V)
        Y, tape = relaxed.forward(P)
        total, per_row = loss(Y, relaxed.targets)
        grad = relaxed.backward(tape, Y, relaxed.targets, V)
    """

    def __init__(
        self,
        circuit: Circuit,
        input_vars: Optional[Sequence[int]] = None,
        free_probability: float = 0.5,
        workers: int = 1,
        prune: bool = True,
        dtype: str = "float64",
    ):
        """
        Initialize the relaxed circuit.

        Args:
            circuit: The discrete circuit.
            input_vars: Primary inputs driven by the probability matrix;
                defaults to every circuit input.
            free_probability: Value of inputs not in `input_vars`.
            workers: Threads used for row blocks of the batch.
            prune: Skip nodes that no output depends on.
            dtype: Floating point type of node values.
        """
        self.circuit = circuit
        self.input_vars = list(circuit.input_vars if input_vars is None else input_vars)
        for var in self.input_vars:
            if var not in circuit.input_index:
                raise RelaxationError(f"x{var} is not a primary input of the circuit")
        self.free_probability = free_probability
        self.workers = max(1, workers)
        self.dtype = np.dtype(dtype)
        self.targets = circuit.targets.astype(self.dtype)
        self._columns = {circuit.input_index[v]: j for j, v in enumerate(self.input_vars)}
        self._input_nodes = [circuit.input_index[v] for v in self.input_vars]
        self._output_nodes = circuit.output_nodes
        live = self._cone() if prune else set(range(len(circuit.nodes)))
        self._schedule = [n for n in circuit.nodes if n.id in live]

    def _cone(self) -> Set[int]:
        live: Set[int] = set()
        stack = list(self._output_nodes)
        while stack:
            node_id = stack.pop()
            if node_id in live:
                continue
            live.add(node_id)
            stack.extend(self.circuit.nodes[node_id].args)
        return live

    @property
    def num_inputs(self) -> int:
        return len(self.input_vars)

    @property
    def num_outputs(self) -> int:
        return len(self._output_nodes)

    def _blocks(self, batch: int) -> List[slice]:
        count = min(self.workers, max(batch, 1))
        bounds = np.linspace(0, batch, count + 1).astype(int)
        return [slice(bounds[i], bounds[i + 1]) for i in range(count)]

    def _run_blocks(self, func, batch: int) -> None:
        blocks = self._blocks(batch)
        if len(blocks) == 1:
            func(blocks[0])
            return
        with ThreadPoolExecutor(max_workers=len(blocks)) as pool:
            list(pool.map(func, blocks))

    def forward(self, P: np.ndarray) -> Tuple[np.ndarray, ForwardTape]:
        """
        Propagate input probabilities through the circuit.

        Args:
            P: Probabilities, shape (batch, num_inputs), entries in [0, 1].

        Returns:
            (Y, tape) with Y of shape (batch, num_outputs).

        Raises:
            RelaxationError: On a shape mismatch or entries outside [0, 1].
        """
        P = np.asarray(P, dtype=self.dtype)
        if P.ndim != 2 or P.shape[1] != self.num_inputs:
            raise RelaxationError(f"Expected (batch, {self.num_inputs}) probabilities, got {P.shape}")
        if P.size and (P.min() < 0.0 or P.max() > 1.0):
            raise RelaxationError("Probabilities must lie in [0, 1]")
        batch = P.shape[0]
        values = np.zeros((len(self.circuit.nodes), batch), dtype=self.dtype)

        def run(rows: slice) -> None:
            v = values[:, rows]
            for node in self._schedule:
                kind = node.kind
                if kind is GateKind.INPUT:
                    column = self._columns.get(node.id)
                    v[node.id] = self.free_probability if column is None else P[rows, column]
                elif kind is GateKind.CONST1:
                    v[node.id] = 1.0
                elif kind is GateKind.CONST0:
                    v[node.id] = 0.0
                elif kind is GateKind.NOT:
                    np.subtract(1.0, v[node.args[0]], out=v[node.id])
                else:
                    a, b = v[node.args[0]], v[node.args[1]]
                    if kind is GateKind.AND2:
                        np.multiply(a, b, out=v[node.id])
                    elif kind is GateKind.OR2:
                        v[node.id] = 1.0 - (1.0 - a) * (1.0 - b)
                    elif kind is GateKind.XOR2:
                        v[node.id] = (1.0 - a) * b + a * (1.0 - b)
                    else:
                        v[node.id] = a * b + (1.0 - a) * (1.0 - b)

        self._run_blocks(run, batch)
        Y = values[self._output_nodes].T.copy()
        return Y, ForwardTape(values=values, probabilities=P)

    def backward(
        self,
        tape: ForwardTape,
        Y: np.ndarray,
        T: np.ndarray,
        V: Optional[np.ndarray] = None,
    ) -> np.ndarray:
        """
        Gradient of the squared-error loss.

        Seeds dL/dY = 2 (Y - T), sweeps the nodes in reverse order applying
        the local gate derivatives (fan-out contributions are summed) and
        finally multiplies by the sigmoid slope P (1 - P).

        Args:
            tape: Tape of the matching forward pass.
            Y: Outputs of that pass, shape (batch, num_outputs).
            T: Targets, shape (num_outputs,).
            V: Soft inputs of that pass; only its shape is checked. When
                omitted the gradient with respect to P is returned.

        Returns:
            Gradient with the shape of the input matrix.
        """
        Y = np.asarray(Y, dtype=self.dtype)
        T = np.asarray(T, dtype=self.dtype)
        batch = tape.batch_size
        if Y.shape != (batch, self.num_outputs) or T.shape != (self.num_outputs,):
            raise RelaxationError(
                f"Outputs {Y.shape} / targets {T.shape} do not match the tape"
            )
        if V is not None and np.shape(V) != tape.probabilities.shape:
            raise RelaxationError(
                f"Inputs {np.shape(V)} do not match the tape {tape.probabilities.shape}"
            )
        values = tape.values
        adjoint = np.zeros_like(values)
        grad = np.zeros((batch, self.num_inputs), dtype=self.dtype)

        def run(rows: slice) -> None:
            v = values[:, rows]
            g = adjoint[:, rows]
            for j, node_id in enumerate(self._output_nodes):
                g[node_id] += 2.0 * (Y[rows, j] - T[j])
            for node in reversed(self._schedule):
                kind = node.kind
                if node.kind.arity == 0:
                    continue
                upstream = g[node.id]
                if kind is GateKind.NOT:
                    g[node.args[0]] -= upstream
                    continue
                a_id, b_id = node.args
                a, b = v[a_id], v[b_id]
                if kind is GateKind.AND2:
                    da, db = b, a
                elif kind is GateKind.OR2:
                    da, db = 1.0 - b, 1.0 - a
                elif kind is GateKind.XOR2:
                    da, db = 1.0 - 2.0 * b, 1.0 - 2.0 * a
                else:
                    da, db = 2.0 * b - 1.0, 2.0 * a - 1.0
                g[a_id] += upstream * da
                g[b_id] += upstream * db
            for j, node_id in enumerate(self._input_nodes):
                grad[rows, j] = g[node_id]

        self._run_blocks(run, batch)
        if V is None:
            return grad
        P = tape.probabilities
        return grad * P * (1.0 - P)

    def loss_and_grad(self, V: np.ndarray) -> Tuple[float, np.ndarray, np.ndarray]:
        """Forward, loss and backward in one call: (total, per_row, dL/dV)."""
        P = embed(V).astype(self.dtype)
        Y, tape = self.forward(P)
        total, per_row = loss(Y, self.targets)
        return total, per_row, self.backward(tape, Y, self.targets, V)
