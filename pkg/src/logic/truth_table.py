"""
Truth Tables

Packed truth tables stored in a single Python integer: bit r of the table
is the function value on row r, where the variable at position i of the
(sorted) variable list takes the value (r >> i) & 1.
"""

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, Iterator, Mapping, Optional, Sequence, Tuple

from .expr import BoolExpr, ExprKind, ExpressionError


class ComplementCheck(Enum):
    """Outcome of a complement test between two expressions."""
    COMPLEMENT = "complement"
    NOT_COMPLEMENT = "not_complement"
    UNDECIDED = "undecided"

    @property
    def is_complement(self) -> bool:
        return self is ComplementCheck.COMPLEMENT


def popcount(value: int) -> int:
    """Number of set bits in a non-negative integer."""
    return value.bit_count()


@lru_cache(maxsize=None)
def full_mask(num_vars: int) -> int:
    return (1 << (1 << num_vars)) - 1


@lru_cache(maxsize=None)
def var_mask(position: int, num_vars: int) -> int:
    """Rows where the variable at `position` is 1."""
    half = 1 << position
    mask = ((1 << half) - 1) << half
    width = half << 1
    total = 1 << num_vars
    while width < total:
        mask |= mask << width
        width <<= 1
    return mask


@dataclass(frozen=True)
class TruthTable:
    """
    A Boolean function over an ordered variable list.

    Usage:
        table = TruthTable.from_expr(expr)
        if table.is_constant: ...
        relevant = table.depends_on_vars()
    """
    variables: Tuple[int, ...]
    bits: int

    @property
    def num_vars(self) -> int:
        return len(self.variables)

    @property
    def num_rows(self) -> int:
        return 1 << len(self.variables)

    @property
    def mask(self) -> int:
        return full_mask(len(self.variables))

    @property
    def is_constant(self) -> bool:
        return self.bits == 0 or self.bits == self.mask

    @property
    def constant_value(self) -> Optional[int]:
        if self.bits == 0:
            return 0
        if self.bits == self.mask:
            return 1
        return None

    @classmethod
    def from_expr(
        cls,
        expr: BoolExpr,
        variables: Optional[Sequence[int]] = None,
        assume: Optional[Mapping[int, int]] = None,
    ) -> "TruthTable":
        """
        Tabulate an expression.

        Args:
            expr: Expression to tabulate.
            variables: Table variables; defaults to the sorted support.
            assume: Fixed values for support variables outside `variables`.

        Raises:
            ExpressionError: If a support variable is neither tabulated nor assumed.
        """
        if variables is None:
            variables = sorted(expr.variables)
        variables = tuple(variables)
        positions = {v: i for i, v in enumerate(variables)}
        bits = _tabulate(expr, positions, len(variables), assume or {}, {})
        return cls(variables, bits)

    def value_at(self, row: int) -> int:
        return (self.bits >> row) & 1

    def evaluate(self, assignment: Mapping[int, int]) -> int:
        row = 0
        for i, var in enumerate(self.variables):
            if assignment[var]:
                row |= 1 << i
        return self.value_at(row)

    def __invert__(self) -> "TruthTable":
        return TruthTable(self.variables, self.mask ^ self.bits)

    def cofactor(self, var: int, value: int) -> "TruthTable":
        """Restriction to var = value, kept over the same variable list."""
        position = self.variables.index(var)
        half = 1 << position
        select = var_mask(position, self.num_vars)
        if value:
            part = self.bits & select
            part |= part >> half
        else:
            part = self.bits & (self.mask ^ select)
            part |= part << half
        return TruthTable(self.variables, part)

    def depends_on(self, var: int) -> bool:
        return self.cofactor(var, 0).bits != self.cofactor(var, 1).bits

    def depends_on_vars(self) -> Tuple[int, ...]:
        return tuple(v for v in self.variables if self.depends_on(v))

    def is_parity(self) -> bool:
        """True if every variable flips the output (XOR/XNOR of all variables)."""
        if not self.variables:
            return False
        for var in self.variables:
            if self.cofactor(var, 0).bits != (self.mask ^ self.cofactor(var, 1).bits):
                return False
        return True

    def minterms(self) -> Iterator[int]:
        bits = self.bits
        row = 0
        while bits:
            if bits & 1:
                yield row
            bits >>= 1
            row += 1


def _tabulate(
    expr: BoolExpr,
    positions: Dict[int, int],
    num_vars: int,
    assume: Mapping[int, int],
    memo: Dict[BoolExpr, int],
) -> int:
    cached = memo.get(expr)
    if cached is not None:
        return cached
    full = full_mask(num_vars)
    kind = expr.kind
    if kind is ExprKind.CONST:
        result = full if expr.value else 0
    elif kind is ExprKind.VAR:
        position = positions.get(expr.value)
        if position is not None:
            result = var_mask(position, num_vars)
        elif expr.value in assume:
            result = full if assume[expr.value] else 0
        else:
            raise ExpressionError(f"x{expr.value} is outside the table variables")
    else:
        parts = [_tabulate(c, positions, num_vars, assume, memo) for c in expr.children]
        if kind is ExprKind.NOT:
            result = full ^ parts[0]
        elif kind is ExprKind.AND:
            result = full
            for part in parts:
                result &= part
        elif kind is ExprKind.OR:
            result = 0
            for part in parts:
                result |= part
        else:
            result = 0
            for part in parts:
                result ^= part
            if kind is ExprKind.XNOR:
                result ^= full
    memo[expr] = result
    return result


def is_complement(f: BoolExpr, g: BoolExpr, cap: int = 16) -> ComplementCheck:
    """
    Decide whether f is equivalent to NOT g.

    The check is exhaustive over the union support and is only attempted when
    that support has at most `cap` variables.

    Args:
        f: First expression.
        g: Second expression.
        cap: Largest union support that is tabulated.

    Returns:
        COMPLEMENT, NOT_COMPLEMENT, or UNDECIDED when the cap is exceeded.
    """
    variables = sorted(f.variables | g.variables)
    if len(variables) > cap:
        return ComplementCheck.UNDECIDED
    f_table = TruthTable.from_expr(f, variables)
    g_table = TruthTable.from_expr(g, variables)
    if f_table.bits == (f_table.mask ^ g_table.bits):
        return ComplementCheck.COMPLEMENT
    return ComplementCheck.NOT_COMPLEMENT


def equivalent(f: BoolExpr, g: BoolExpr) -> bool:
    """Exhaustive equivalence check over the union support."""
    variables = sorted(f.variables | g.variables)
    return TruthTable.from_expr(f, variables).bits == TruthTable.from_expr(g, variables).bits
