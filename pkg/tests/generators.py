"""
Instance generators and brute-force oracles shared by the test suite.
"""

import itertools
from typing import List, Optional, Sequence, Set, Tuple

import numpy as np


# =============================================================================
# Gate Encodings
# =============================================================================

def gate_clauses(kind: str, inputs: Sequence[int], output: int) -> List[List[int]]:
    """Clauses encoding output = kind(inputs)."""
    y = output
    if kind == "NOT":
        (a,) = inputs
        return [[-a, -y], [a, y]]
    if kind == "BUF":
        (a,) = inputs
        return [[-a, y], [a, -y]]
    if kind in ("AND", "NAND"):
        sign = 1 if kind == "AND" else -1
        clauses = [[a, -sign * y] for a in inputs]
        clauses.append([-a for a in inputs] + [sign * y])
        return clauses
    if kind in ("OR", "NOR"):
        sign = 1 if kind == "OR" else -1
        clauses = [[-a, sign * y] for a in inputs]
        clauses.append(list(inputs) + [-sign * y])
        return clauses
    if kind in ("XOR", "XNOR"):
        flip = 0 if kind == "XOR" else 1
        clauses = []
        for bits in itertools.product((0, 1), repeat=len(inputs)):
            parity = (sum(bits) + flip) & 1
            # forbid inputs == bits together with output != parity
            clause = [-a if b else a for a, b in zip(inputs, bits)]
            clause.append(y if parity else -y)
            clauses.append(clause)
        return clauses
    raise ValueError(f"Unknown gate kind {kind}")


def gate_function(kind: str, values: Sequence[int]) -> int:
    """Reference semantics of the generator gate kinds."""
    if kind == "NOT":
        return 1 - values[0]
    if kind == "BUF":
        return values[0]
    if kind == "AND":
        return int(all(values))
    if kind == "NAND":
        return 1 - int(all(values))
    if kind == "OR":
        return int(any(values))
    if kind == "NOR":
        return 1 - int(any(values))
    if kind == "XOR":
        return sum(values) & 1
    if kind == "XNOR":
        return 1 - (sum(values) & 1)
    raise ValueError(f"Unknown gate kind {kind}")


def gate_signature_cnf(kind: str, num_inputs: int):
    """CnfFormula encoding one gate over inputs x1..xn with output x(n+1)."""
    from src.cnf import CnfFormula

    inputs = list(range(1, num_inputs + 1))
    return CnfFormula.from_ints(num_inputs + 1, gate_clauses(kind, inputs, num_inputs + 1))


# =============================================================================
# Random Instances
# =============================================================================

def random_tseitin_cnf(
    rng: np.random.Generator,
    num_inputs: int,
    num_levels: int,
    max_vars: int = 16,
    constrain_output: Optional[int] = 1,
):
    """
    Tseitin encoding of a random levelled circuit.

    Gate outputs are numbered after their inputs. The last gate output is
    constrained to `constrain_output` by a unit clause (skipped when None).

    Returns:
        (CnfFormula, list of (kind, inputs, output)).
    """
    from src.cnf import CnfFormula

    kinds = ["AND", "OR", "NAND", "NOR", "XOR", "XNOR", "NOT", "BUF"]
    signals = list(range(1, num_inputs + 1))
    next_var = num_inputs + 1
    gates = []
    clauses: List[List[int]] = []
    per_level = max(1, (max_vars - num_inputs) // num_levels)
    for _ in range(num_levels):
        for _ in range(per_level):
            if next_var > max_vars:
                break
            kind = kinds[rng.integers(len(kinds))]
            if kind in ("NOT", "BUF"):
                fan_in = 1
            elif kind in ("XOR", "XNOR"):
                fan_in = 2
            else:
                fan_in = int(rng.integers(2, 4))
            fan_in = min(fan_in, len(signals))
            inputs = [int(v) for v in rng.choice(signals, size=fan_in, replace=False)]
            if fan_in == 1 and kind not in ("NOT", "BUF"):
                kind = "BUF"
            gates.append((kind, inputs, next_var))
            clauses.extend(gate_clauses(kind, inputs, next_var))
            signals.append(next_var)
            next_var += 1
    num_vars = next_var - 1
    if constrain_output is not None and gates:
        output = gates[-1][2]
        clauses.append([output if constrain_output else -output])
    return CnfFormula.from_ints(num_vars, clauses), gates


def random_kcnf(rng: np.random.Generator, num_vars: int, num_clauses: int, k: int = 3):
    """Uniform random k-CNF without tautologies."""
    from src.cnf import CnfFormula

    clauses = []
    for _ in range(num_clauses):
        variables = rng.choice(np.arange(1, num_vars + 1), size=min(k, num_vars), replace=False)
        signs = rng.integers(0, 2, size=len(variables))
        clauses.append([int(v) if s else -int(v) for v, s in zip(variables, signs)])
    return CnfFormula.from_ints(num_vars, clauses)


def or_family_cnf(
    seed: int = 7,
    num_inputs: int = 50,
    num_gates: int = 50,
    fan_in: int = 4,
    num_constrained: int = 10,
):
    """
    Instance shaped like the `or-50` benchmark family: OR gates over random
    inputs, with some gate outputs forced to their value under a random
    input assignment so the instance is satisfiable.
    """
    from src.cnf import CnfFormula

    rng = np.random.default_rng(seed)
    reference = rng.integers(0, 2, size=num_inputs + 1)
    clauses: List[List[int]] = []
    values = {}
    for g in range(num_gates):
        output = num_inputs + 1 + g
        inputs = [int(v) for v in rng.choice(np.arange(1, num_inputs + 1), size=fan_in, replace=False)]
        clauses.extend(gate_clauses("OR", inputs, output))
        values[output] = int(any(reference[i] for i in inputs))
    forced = rng.choice(np.arange(num_inputs + 1, num_inputs + num_gates + 1), size=num_constrained, replace=False)
    for output in sorted(int(v) for v in forced):
        clauses.append([output if values[output] else -output])
    return CnfFormula.from_ints(num_inputs + num_gates, clauses)


def random_gate_circuit(
    rng: np.random.Generator,
    num_inputs: int,
    num_gates: int,
    num_outputs: int = 2,
):
    """Random circuit of NOT/AND2/OR2/XOR2/XNOR2 gates over num_inputs inputs."""
    from src.circuit import Circuit
    from src.logic import GateKind

    kinds = [GateKind.NOT, GateKind.AND2, GateKind.OR2, GateKind.XOR2, GateKind.XNOR2]
    circuit = Circuit(num_vars=num_inputs + num_gates, aux_base=num_inputs + num_gates + 1)
    for var in range(1, num_inputs + 1):
        node = circuit.add_node(GateKind.INPUT, var=var)
        circuit.input_index[var] = node
        circuit.var_nodes[var] = node
    for g in range(num_gates):
        kind = kinds[rng.integers(len(kinds))]
        count = len(circuit.nodes)
        if kind is GateKind.NOT:
            args = [int(rng.integers(count))]
        else:
            args = [int(a) for a in rng.choice(count, size=2, replace=count < 2)]
        var = num_inputs + 1 + g
        node = circuit.add_node(kind, args, var=var)
        circuit.var_nodes[var] = node
    for var in range(num_inputs + num_gates - num_outputs + 1, num_inputs + num_gates + 1):
        circuit.output_index[var] = (circuit.var_nodes[var], int(rng.integers(2)))
    circuit.validate()
    return circuit


def build_gate_circuit(num_inputs: int, gates, targets):
    """
    Circuit over inputs x1..xn followed by `gates`, a list of (GateKind, node
    ids). Gate g drives variable n+1+g; `targets` maps output vars to 0/1.
    """
    from src.circuit import Circuit
    from src.logic import GateKind

    num_vars = num_inputs + len(gates)
    circuit = Circuit(num_vars=num_vars, aux_base=num_vars + 1)
    for var in range(1, num_inputs + 1):
        node = circuit.add_node(GateKind.INPUT, var=var)
        circuit.input_index[var] = node
        circuit.var_nodes[var] = node
    for g, (kind, args) in enumerate(gates):
        var = num_inputs + 1 + g
        circuit.var_nodes[var] = circuit.add_node(kind, args, var=var)
    for var, target in targets.items():
        circuit.output_index[var] = (circuit.var_nodes[var], target)
    circuit.validate()
    return circuit


def random_expr(rng: np.random.Generator, variables: Sequence[int], depth: int):
    """Random expression over `variables` built with the module constructors."""
    from src.logic import make_and, make_not, make_or, make_var, make_xor

    if depth == 0 or rng.random() < 0.2:
        return make_var(int(rng.choice(variables)))
    op = int(rng.integers(4))
    if op == 0:
        return make_not(random_expr(rng, variables, depth - 1))
    children = [random_expr(rng, variables, depth - 1) for _ in range(int(rng.integers(2, 4)))]
    return (make_and, make_or, make_xor)[op - 1](*children)


# =============================================================================
# Brute-Force Oracles
# =============================================================================

def all_assignments(num_vars: int) -> np.ndarray:
    """Every 0/1 assignment as rows of a (2^n, n) uint8 matrix; column j is x(j+1)."""
    rows = np.arange(1 << num_vars, dtype=np.int64)
    return ((rows[:, None] >> np.arange(num_vars)) & 1).astype(np.uint8)


def brute_force_models(cnf) -> Set[Tuple[int, ...]]:
    """All models of a small CNF, checked clause by clause with numpy."""
    table = all_assignments(cnf.num_vars)
    ok = np.ones(table.shape[0], dtype=bool)
    for clause in cnf.clauses:
        satisfied = np.zeros(table.shape[0], dtype=bool)
        for value in clause.to_ints():
            column = table[:, abs(value) - 1]
            satisfied |= (column == 1) if value > 0 else (column == 0)
        ok &= satisfied
    return {tuple(int(b) for b in row) for row in table[ok]}


def circuit_models(circuit) -> Set[Tuple[int, ...]]:
    """
    Assignments over the CNF variables produced by the circuit on every
    primary-input combination that meets all output targets.
    """
    from src.circuit import evaluate_batch, project_assignments

    inputs = all_assignments(len(circuit.input_vars))
    values = evaluate_batch(circuit, inputs)
    ok = np.ones(inputs.shape[0], dtype=bool)
    for node_id, target in circuit.output_index.values():
        ok &= values[node_id] == bool(target)
    bits = project_assignments(circuit, values)
    return {tuple(int(b) for b in row) for row in bits[ok]}
