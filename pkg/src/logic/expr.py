"""
Boolean Expressions

Immutable expression trees with canonicalizing constructors. Every
constructor flattens nested operators of the same kind, folds constants,
removes duplicates and sorts children, so structurally equal expressions
compare equal and print identically.
"""

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Any, FrozenSet, List, Mapping, Tuple


class ExpressionError(Exception):
    """Exception raised when an expression cannot be evaluated or decoded."""
    pass


class ExprKind(Enum):
    """Node kinds of a Boolean expression tree."""
    CONST = "const"
    VAR = "var"
    NOT = "not"
    AND = "and"
    OR = "or"
    XOR = "xor"
    XNOR = "xnor"


_KIND_RANK = {
    ExprKind.CONST: 0,
    ExprKind.VAR: 1,
    ExprKind.NOT: 1,
    ExprKind.AND: 2,
    ExprKind.OR: 3,
    ExprKind.XOR: 4,
    ExprKind.XNOR: 5,
}

_NARY = (ExprKind.AND, ExprKind.OR, ExprKind.XOR, ExprKind.XNOR)


@dataclass(frozen=True)
class BoolExpr:
    """
    A Boolean expression node.

    `value` holds the constant (0/1) for CONST nodes and the 1-based variable
    index for VAR nodes. XNOR over n children means NOT(XOR(children)).
    Build nodes through the module constructors, not directly.
    """
    kind: ExprKind
    value: int = 0
    children: Tuple["BoolExpr", ...] = ()

    def __hash__(self) -> int:
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.kind, self.value, self.children))

    @cached_property
    def sort_key(self) -> Tuple[Any, ...]:
        """Ordering key; literals of the same variable sort next to each other."""
        if self.kind is ExprKind.CONST:
            return (0, self.value)
        if self.kind is ExprKind.VAR:
            return (1, self.value, 0)
        if self.kind is ExprKind.NOT and self.children[0].kind is ExprKind.VAR:
            return (1, self.children[0].value, 1)
        return (_KIND_RANK[self.kind] + 1, tuple(c.sort_key for c in self.children))

    @cached_property
    def variables(self) -> FrozenSet[int]:
        """Exact set of variables appearing in the tree."""
        if self.kind is ExprKind.VAR:
            return frozenset((self.value,))
        result: FrozenSet[int] = frozenset()
        for child in self.children:
            result = result | child.variables
        return result

    @property
    def is_const(self) -> bool:
        return self.kind is ExprKind.CONST

    @property
    def is_literal(self) -> bool:
        return self.kind is ExprKind.VAR or (
            self.kind is ExprKind.NOT and self.children[0].kind is ExprKind.VAR
        )

    @cached_property
    def gate_equivalents(self) -> int:
        """2-input gate equivalents of the tree: n-ary = n-1, NOT and constants free."""
        own = len(self.children) - 1 if self.kind in _NARY else 0
        return own + sum(c.gate_equivalents for c in self.children)

    def __invert__(self) -> "BoolExpr":
        return make_not(self)

    def __and__(self, other: "BoolExpr") -> "BoolExpr":
        return make_and(self, other)

    def __or__(self, other: "BoolExpr") -> "BoolExpr":
        return make_or(self, other)

    def __xor__(self, other: "BoolExpr") -> "BoolExpr":
        return make_xor(self, other)

    def __str__(self) -> str:
        return to_infix(self, top_level=True)


FALSE = BoolExpr(ExprKind.CONST, 0)
TRUE = BoolExpr(ExprKind.CONST, 1)


def make_const(value: int) -> BoolExpr:
    return TRUE if value else FALSE


def make_var(index: int) -> BoolExpr:
    if index < 1:
        raise ExpressionError(f"Variable index must be >= 1, got {index}")
    return BoolExpr(ExprKind.VAR, index)


def make_literal(index: int, negated: bool) -> BoolExpr:
    var = make_var(index)
    return make_not(var) if negated else var


def make_not(expr: BoolExpr) -> BoolExpr:
    """Negate, collapsing double negation and constant/XOR complements."""
    if expr.kind is ExprKind.CONST:
        return make_const(1 - expr.value)
    if expr.kind is ExprKind.NOT:
        return expr.children[0]
    if expr.kind is ExprKind.XOR:
        return BoolExpr(ExprKind.XNOR, 0, expr.children)
    if expr.kind is ExprKind.XNOR:
        return BoolExpr(ExprKind.XOR, 0, expr.children)
    return BoolExpr(ExprKind.NOT, 0, (expr,))


def _flatten(kind: ExprKind, children: Tuple[BoolExpr, ...]) -> List[BoolExpr]:
    flat: List[BoolExpr] = []
    for child in children:
        if child.kind is kind:
            flat.extend(child.children)
        else:
            flat.append(child)
    return flat


def _make_lattice(kind: ExprKind, children: Tuple[BoolExpr, ...]) -> BoolExpr:
    # AND: identity 1, annihilator 0. OR: the reverse.
    identity = 1 if kind is ExprKind.AND else 0
    unique = {}
    for child in _flatten(kind, children):
        if child.kind is ExprKind.CONST:
            if child.value != identity:
                return make_const(1 - identity)
            continue
        unique[child] = None
    for child in unique:
        if make_not(child) in unique:
            return make_const(1 - identity)
    if not unique:
        return make_const(identity)
    if len(unique) == 1:
        return next(iter(unique))
    ordered = tuple(sorted(unique, key=lambda e: e.sort_key))
    return BoolExpr(kind, 0, ordered)


def make_and(*children: BoolExpr) -> BoolExpr:
    return _make_lattice(ExprKind.AND, children)


def make_or(*children: BoolExpr) -> BoolExpr:
    return _make_lattice(ExprKind.OR, children)


def make_xor(*children: BoolExpr) -> BoolExpr:
    """XOR with constants and negations folded into a parity bit."""
    parity = 0
    counts = {}
    pending = list(children)
    while pending:
        child = pending.pop()
        if child.kind is ExprKind.CONST:
            parity ^= child.value
        elif child.kind is ExprKind.NOT:
            parity ^= 1
            pending.append(child.children[0])
        elif child.kind in (ExprKind.XOR, ExprKind.XNOR):
            if child.kind is ExprKind.XNOR:
                parity ^= 1
            pending.extend(child.children)
        else:
            counts[child] = counts.get(child, 0) ^ 1
    # x ^ x = 0
    remaining = [child for child, odd in counts.items() if odd]
    if not remaining:
        return make_const(parity)
    if len(remaining) == 1:
        return make_not(remaining[0]) if parity else remaining[0]
    ordered = tuple(sorted(remaining, key=lambda e: e.sort_key))
    return BoolExpr(ExprKind.XNOR if parity else ExprKind.XOR, 0, ordered)


def make_xnor(*children: BoolExpr) -> BoolExpr:
    return make_not(make_xor(*children))


def support(expr: BoolExpr) -> Tuple[int, ...]:
    """Sorted variable indices appearing in the expression."""
    return tuple(sorted(expr.variables))


def eval_expr(expr: BoolExpr, assignment: Mapping[int, int]) -> int:
    """
    Evaluate an expression under a (partial) assignment covering its support.

    Raises:
        ExpressionError: If a support variable is missing from the assignment.
    """
    kind = expr.kind
    if kind is ExprKind.CONST:
        return expr.value
    if kind is ExprKind.VAR:
        try:
            return 1 if assignment[expr.value] else 0
        except KeyError:
            raise ExpressionError(f"x{expr.value} is not assigned")
    values = [eval_expr(child, assignment) for child in expr.children]
    if kind is ExprKind.NOT:
        return 1 - values[0]
    if kind is ExprKind.AND:
        return int(all(values))
    if kind is ExprKind.OR:
        return int(any(values))
    parity = sum(values) & 1
    return parity if kind is ExprKind.XOR else 1 - parity


_INFIX_OPS = {
    ExprKind.AND: " & ",
    ExprKind.OR: " | ",
    ExprKind.XOR: " ^ ",
    ExprKind.XNOR: " ^ ",
}


def to_infix(expr: BoolExpr, top_level: bool = False) -> str:
    """Render with `~ & | ^`, parenthesizing every nested n-ary operator."""
    kind = expr.kind
    if kind is ExprKind.CONST:
        return str(expr.value)
    if kind is ExprKind.VAR:
        return f"x{expr.value}"
    if kind is ExprKind.NOT:
        child = expr.children[0]
        inner = to_infix(child)
        if child.kind is ExprKind.VAR or inner.startswith("("):
            return f"~{inner}"
        return f"~({inner})"
    body = _INFIX_OPS[kind].join(to_infix(c) for c in expr.children)
    if kind is ExprKind.XNOR:
        return f"~({body})"
    return body if top_level else f"({body})"


def to_json_obj(expr: BoolExpr) -> Any:
    """Encode as nested lists, e.g. ["and", ["var", 4], ["not", ["var", 9]]]."""
    if expr.kind in (ExprKind.CONST, ExprKind.VAR):
        return [expr.kind.value, expr.value]
    return [expr.kind.value] + [to_json_obj(c) for c in expr.children]


def from_json_obj(obj: Any) -> BoolExpr:
    """Decode the nested-list form produced by `to_json_obj`."""
    if not isinstance(obj, list) or not obj or not isinstance(obj[0], str):
        raise ExpressionError(f"Malformed expression: {obj!r}")
    try:
        kind = ExprKind(obj[0])
    except ValueError:
        raise ExpressionError(f"Unknown expression kind '{obj[0]}'")
    args = obj[1:]
    if kind in (ExprKind.CONST, ExprKind.VAR):
        if len(args) != 1 or not isinstance(args[0], int):
            raise ExpressionError(f"Malformed {kind.value} node: {obj!r}")
        return make_const(args[0]) if kind is ExprKind.CONST else make_var(args[0])
    children = [from_json_obj(a) for a in args]
    if kind is ExprKind.NOT:
        if len(children) != 1:
            raise ExpressionError("NOT takes exactly one operand")
        return make_not(children[0])
    if len(children) < 2:
        raise ExpressionError(f"{kind.value} needs at least two operands")
    builders = {
        ExprKind.AND: make_and,
        ExprKind.OR: make_or,
        ExprKind.XOR: make_xor,
        ExprKind.XNOR: make_xnor,
    }
    return builders[kind](*children)
