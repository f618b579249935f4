"""
Gate Netlist

A topologically ordered DAG of primitive gates (at most two operands)
built from an extraction result, with discrete scalar and batch evaluation
and two-input gate-equivalent accounting.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..cnf.formula import CnfFormula
from ..extraction.extractor import ExtractionResult
from ..logic.decompose import GateKind, apply_gate, decompose_two_input


logger = logging.getLogger(__name__)


class CircuitError(Exception):
    """Exception raised for malformed circuits or missing input values."""
    pass


@dataclass(frozen=True)
class GateNode:
    """One gate; operands are ids of earlier nodes."""
    id: int
    kind: GateKind
    args: Tuple[int, ...] = ()
    var: Optional[int] = None


@dataclass
class GateCount:
    """Two-input gate equivalents with a per-kind breakdown."""
    two_input_equivalents: int
    by_kind: Dict[str, int] = field(default_factory=dict)


@dataclass
class Circuit:
    """
    Discrete circuit recovered from a CNF.

    `input_index` maps primary-input vars to INPUT nodes, `output_index`
    maps output vars to (node, target), and `var_nodes` maps every variable
    (inputs, intermediates, outputs, auxiliaries) to the node carrying its
    value. A definition that is a plain copy of another signal aliases that
    signal's node.

    Usage:
        circuit = build_circuit(result)
        values = eval_discrete(circuit, {1: 0, 11: 1})
    """
    num_vars: int
    aux_base: int
    nodes: List[GateNode] = field(default_factory=list)
    input_index: Dict[int, int] = field(default_factory=dict)
    output_index: Dict[int, Tuple[int, int]] = field(default_factory=dict)
    var_nodes: Dict[int, int] = field(default_factory=dict)

    @property
    def input_vars(self) -> List[int]:
        return list(self.input_index)

    @property
    def output_vars(self) -> List[int]:
        return list(self.output_index)

    @property
    def output_nodes(self) -> List[int]:
        return [node for node, _ in self.output_index.values()]

    @property
    def targets(self) -> np.ndarray:
        return np.array([t for _, t in self.output_index.values()], dtype=np.float64)

    def add_node(self, kind: GateKind, args: Sequence[int] = (), var: Optional[int] = None) -> int:
        node_id = len(self.nodes)
        self.nodes.append(GateNode(node_id, kind, tuple(args), var))
        return node_id

    def validate(self) -> None:
        """
        Check topological order, arities and index consistency.

        Raises:
            CircuitError: On the first violation found.
        """
        for position, node in enumerate(self.nodes):
            if node.id != position:
                raise CircuitError(f"Node at position {position} has id {node.id}")
            if len(node.args) != node.kind.arity:
                raise CircuitError(
                    f"Node {node.id} ({node.kind.value}) has {len(node.args)} operands"
                )
            for arg in node.args:
                if not 0 <= arg < node.id:
                    raise CircuitError(f"Node {node.id} reads node {arg} out of order")
            if node.kind is GateKind.INPUT and node.var is None:
                raise CircuitError(f"INPUT node {node.id} has no variable")
        for var, node_id in self.input_index.items():
            if not 0 <= node_id < len(self.nodes) or self.nodes[node_id].kind is not GateKind.INPUT:
                raise CircuitError(f"x{var} does not map to an INPUT node")
        for var, (node_id, target) in self.output_index.items():
            if not 0 <= node_id < len(self.nodes):
                raise CircuitError(f"Output x{var} maps to missing node {node_id}")
            if target not in (0, 1):
                raise CircuitError(f"Output x{var} has target {target}")
        for var, node_id in self.var_nodes.items():
            if not 0 <= node_id < len(self.nodes):
                raise CircuitError(f"x{var} maps to missing node {node_id}")


def build_circuit(result: ExtractionResult) -> Circuit:
    """
    Lower every definition into two-input gates and wire them by variable.

    Args:
        result: A finished extraction.

    Returns:
        The validated Circuit.

    Raises:
        CircuitError: If a definition reads a variable with no driver yet.
    """
    circuit = Circuit(num_vars=result.num_vars, aux_base=result.aux_base)
    for var in result.pi:
        node_id = circuit.add_node(GateKind.INPUT, var=var)
        circuit.input_index[var] = node_id
        circuit.var_nodes[var] = node_id

    for definition in result.be:
        gates = decompose_two_input(definition.expr)
        local: List[int] = []
        for position, gate in enumerate(gates):
            if gate.kind is GateKind.INPUT:
                driver = circuit.var_nodes.get(gate.var)
                if driver is None:
                    raise CircuitError(
                        f"Definition of x{definition.var} reads x{gate.var} before it is driven"
                    )
                local.append(driver)
                continue
            is_root = position == len(gates) - 1
            args = [local[i] for i in gate.args]
            local.append(circuit.add_node(gate.kind, args, definition.var if is_root else None))
        circuit.var_nodes[definition.var] = local[-1]

    for out in result.po:
        circuit.output_index[out.var] = (circuit.var_nodes[out.var], out.target)

    circuit.validate()
    logger.debug(
        f"Built circuit with {len(circuit.nodes)} nodes, "
        f"{len(circuit.input_index)} inputs, {len(circuit.output_index)} outputs"
    )
    return circuit


def eval_discrete(circuit: Circuit, pi_values: Mapping[int, int]) -> Dict[int, int]:
    """
    Evaluate the circuit on one input assignment.

    Args:
        circuit: The circuit.
        pi_values: Values of every primary input.

    Returns:
        Values of every variable known to the circuit.

    Raises:
        CircuitError: If a primary input has no value.
    """
    values: List[int] = []
    for node in circuit.nodes:
        if node.kind is GateKind.INPUT:
            if node.var not in pi_values:
                raise CircuitError(f"No value for primary input x{node.var}")
            values.append(1 if pi_values[node.var] else 0)
        else:
            values.append(apply_gate(node.kind, [values[a] for a in node.args]))
    return {var: values[node_id] for var, node_id in circuit.var_nodes.items()}


def evaluate_batch(circuit: Circuit, inputs: np.ndarray) -> np.ndarray:
    """
    Evaluate a batch of input assignments.

    Args:
        circuit: The circuit.
        inputs: Array (batch, num_inputs) of 0/1, columns in `input_vars` order.

    Returns:
        Boolean array (num_nodes, batch) of node values.
    """
    inputs = np.asarray(inputs)
    if inputs.ndim != 2 or inputs.shape[1] != len(circuit.input_index):
        raise CircuitError(
            f"Expected (batch, {len(circuit.input_index)}) inputs, got {inputs.shape}"
        )
    batch = inputs.shape[0]
    values = np.zeros((len(circuit.nodes), batch), dtype=bool)
    columns = {node_id: j for j, node_id in enumerate(circuit.input_index.values())}
    for node in circuit.nodes:
        kind = node.kind
        if kind is GateKind.INPUT:
            values[node.id] = inputs[:, columns[node.id]] != 0
        elif kind is GateKind.CONST1:
            values[node.id] = True
        elif kind is GateKind.CONST0:
            continue
        elif kind is GateKind.NOT:
            np.logical_not(values[node.args[0]], out=values[node.id])
        else:
            a, b = values[node.args[0]], values[node.args[1]]
            if kind is GateKind.AND2:
                np.logical_and(a, b, out=values[node.id])
            elif kind is GateKind.OR2:
                np.logical_or(a, b, out=values[node.id])
            elif kind is GateKind.XOR2:
                np.logical_xor(a, b, out=values[node.id])
            else:
                np.equal(a, b, out=values[node.id])
    return values


def project_assignments(circuit: Circuit, node_values: np.ndarray) -> np.ndarray:
    """
    Gather CNF variable values (auxiliaries dropped) from node values.

    Returns:
        uint8 array (batch, num_vars); column j holds x(j+1).
    """
    batch = node_values.shape[1]
    bits = np.zeros((batch, circuit.num_vars), dtype=np.uint8)
    for var, node_id in circuit.var_nodes.items():
        if var <= circuit.num_vars:
            bits[:, var - 1] = node_values[node_id]
    return bits


def gate_equivalents(circuit: Circuit) -> GateCount:
    """Two-input gate equivalents; NOT, constants and inputs are free."""
    by_kind: Dict[str, int] = {}
    total = 0
    for node in circuit.nodes:
        by_kind[node.kind.value] = by_kind.get(node.kind.value, 0) + 1
        total += node.kind.gate_equivalents
    return GateCount(total, by_kind)


def cnf_gate_equivalents(cnf: CnfFormula) -> GateCount:
    """OR2 per extra literal in each clause plus AND2 per extra clause."""
    or2 = sum(len(c) - 1 for c in cnf.clauses)
    and2 = max(cnf.num_clauses - 1, 0)
    return GateCount(or2 + and2, {"OR2": or2, "AND2": and2})


def ops_reduction(cnf_count: GateCount, circuit_count: GateCount) -> Optional[float]:
    """CNF-to-circuit gate-equivalent ratio; None for a gate-free circuit."""
    if circuit_count.two_input_equivalents == 0:
        return None
    return cnf_count.two_input_equivalents / circuit_count.two_input_equivalents
