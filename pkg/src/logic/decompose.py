"""
Two-Input Decomposition

Lowers an expression tree into a dependency-ordered list of gates with at
most two operands. n-ary operators become left-to-right chains.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Mapping, Optional, Tuple

from .expr import BoolExpr, ExprKind, ExpressionError


class GateKind(Enum):
    """Primitive gate kinds of a lowered circuit."""
    INPUT = "INPUT"
    CONST0 = "CONST0"
    CONST1 = "CONST1"
    NOT = "NOT"
    AND2 = "AND2"
    OR2 = "OR2"
    XOR2 = "XOR2"
    XNOR2 = "XNOR2"

    @property
    def arity(self) -> int:
        if self in (GateKind.INPUT, GateKind.CONST0, GateKind.CONST1):
            return 0
        return 1 if self is GateKind.NOT else 2

    @property
    def gate_equivalents(self) -> int:
        """1 for two-input gates; inputs, constants and inverters are free."""
        return 1 if self.arity == 2 else 0


@dataclass(frozen=True)
class DecomposedGate:
    """A gate in a decomposition list; `args` index earlier list entries."""
    kind: GateKind
    args: Tuple[int, ...] = ()
    var: Optional[int] = None


_CHAIN_KINDS = {
    ExprKind.AND: GateKind.AND2,
    ExprKind.OR: GateKind.OR2,
    ExprKind.XOR: GateKind.XOR2,
}


def decompose_two_input(expr: BoolExpr) -> List[DecomposedGate]:
    """
    Lower an expression into two-input gates.

    INPUT gates are emitted once per variable. The root gate is the last
    entry of the returned list.

    Example:
        x1 & x2 & x3 -> [INPUT x1, INPUT x2, AND2(0, 1), INPUT x3, AND2(2, 3)]
    """
    gates: List[DecomposedGate] = []
    inputs: Dict[int, int] = {}

    def emit(gate: DecomposedGate) -> int:
        gates.append(gate)
        return len(gates) - 1

    def lower(node: BoolExpr) -> int:
        kind = node.kind
        if kind is ExprKind.CONST:
            return emit(DecomposedGate(GateKind.CONST1 if node.value else GateKind.CONST0))
        if kind is ExprKind.VAR:
            if node.value not in inputs:
                inputs[node.value] = emit(DecomposedGate(GateKind.INPUT, var=node.value))
            return inputs[node.value]
        if kind is ExprKind.NOT:
            return emit(DecomposedGate(GateKind.NOT, (lower(node.children[0]),)))

        # XNOR(a, b, c) = XNOR2(XOR2(a, b), c)
        step = GateKind.XOR2 if kind is ExprKind.XNOR else _CHAIN_KINDS[kind]
        last = GateKind.XNOR2 if kind is ExprKind.XNOR else step
        accumulator = lower(node.children[0])
        for position, child in enumerate(node.children[1:], start=2):
            operand = lower(child)
            gate_kind = last if position == len(node.children) else step
            accumulator = emit(DecomposedGate(gate_kind, (accumulator, operand)))
        return accumulator

    lower(expr)
    return gates


def apply_gate(kind: GateKind, operands: List[int]) -> int:
    """Boolean semantics of one gate on 0/1 operands."""
    if kind is GateKind.CONST0:
        return 0
    if kind is GateKind.CONST1:
        return 1
    if kind is GateKind.NOT:
        return 1 - operands[0]
    if kind.arity != 2 or len(operands) != 2:
        raise ExpressionError(f"Gate {kind.value} has no operand semantics")
    a, b = operands
    if kind is GateKind.AND2:
        return a & b
    if kind is GateKind.OR2:
        return a | b
    if kind is GateKind.XOR2:
        return a ^ b
    return 1 - (a ^ b)


def evaluate_decomposition(gates: List[DecomposedGate], assignment: Mapping[int, int]) -> int:
    """Evaluate a gate list under an assignment of its INPUT variables."""
    values: List[int] = []
    for gate in gates:
        if gate.kind is GateKind.INPUT:
            try:
                values.append(1 if assignment[gate.var] else 0)
            except KeyError:
                raise ExpressionError(f"x{gate.var} is not assigned")
            continue
        values.append(apply_gate(gate.kind, [values[i] for i in gate.args]))
    return values[-1]
