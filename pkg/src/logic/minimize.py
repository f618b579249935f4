"""
Expression Minimizer

Two-level minimization on packed truth tables: Quine-McCluskey prime
implicants, essential primes, then a greedy cover. Parity functions are
recognized and kept as XOR/XNOR. Expressions whose support exceeds the
minimization cap only get the local rules applied by the constructors.
"""

import logging
from typing import List, Tuple

from .expr import (
    BoolExpr,
    ExprKind,
    make_and,
    make_const,
    make_literal,
    make_not,
    make_or,
    make_var,
    make_xnor,
    make_xor,
)
from .truth_table import TruthTable, popcount, var_mask


logger = logging.getLogger(__name__)

# (value, dash) pairs: dash has a bit set for every position that is free.
Cube = Tuple[int, int]


def prime_implicants(on_rows: List[int], num_vars: int) -> List[Cube]:
    """
    Prime implicants of a function given by its on-set rows.

    Args:
        on_rows: Row indices where the function is 1.
        num_vars: Number of table variables.

    Returns:
        Prime cubes sorted by (number of literals, value, dash).
    """
    level = {(row, 0) for row in on_rows}
    primes = set()
    while level:
        merged = set()
        next_level = set()
        for value, dash in level:
            for position in range(num_vars):
                bit = 1 << position
                if dash & bit or value & bit:
                    continue
                partner = (value | bit, dash)
                if partner in level:
                    next_level.add((value, dash | bit))
                    merged.add((value, dash))
                    merged.add(partner)
        primes.update(level - merged)
        level = next_level
    return sorted(primes, key=lambda c: (num_vars - popcount(c[1]), c[0], c[1]))


def cube_table(cube: Cube, num_vars: int) -> int:
    """Packed rows covered by a cube."""
    value, dash = cube
    covered = (1 << (1 << num_vars)) - 1
    for position in range(num_vars):
        bit = 1 << position
        if dash & bit:
            continue
        select = var_mask(position, num_vars)
        covered &= select if value & bit else ~select
    return covered & ((1 << (1 << num_vars)) - 1)


def select_cover(on_bits: int, primes: List[Cube], num_vars: int) -> List[Cube]:
    """Essential primes first, then greedily the prime covering most rows."""
    tables = [cube_table(p, num_vars) for p in primes]
    once = twice = 0
    for table in tables:
        twice |= once & table
        once |= table
    unique_rows = once & ~twice
    chosen = [i for i, table in enumerate(tables) if table & unique_rows]
    covered = 0
    for i in chosen:
        covered |= tables[i]
    remaining = on_bits & ~covered
    while remaining:
        # primes are pre-sorted, so max() keeps the first on ties
        best = max(
            (i for i in range(len(primes)) if i not in chosen),
            key=lambda i: (popcount(tables[i] & remaining), popcount(primes[i][1]), -i),
        )
        chosen.append(best)
        remaining &= ~tables[best]
    return [primes[i] for i in sorted(chosen)]


def _cube_expr(cube: Cube, variables: Tuple[int, ...], invert: bool) -> BoolExpr:
    value, dash = cube
    literals = []
    for position, var in enumerate(variables):
        bit = 1 << position
        if dash & bit:
            continue
        negated = not (value & bit)
        literals.append(make_literal(var, negated != invert))
    return make_or(*literals) if invert else make_and(*literals)


def sum_of_products(table: TruthTable) -> BoolExpr:
    primes = prime_implicants(list(table.minterms()), table.num_vars)
    cover = select_cover(table.bits, primes, table.num_vars)
    return make_or(*(_cube_expr(c, table.variables, invert=False) for c in cover))


def product_of_sums(table: TruthTable) -> BoolExpr:
    off = ~table
    primes = prime_implicants(list(off.minterms()), off.num_vars)
    cover = select_cover(off.bits, primes, off.num_vars)
    return make_and(*(_cube_expr(c, table.variables, invert=True) for c in cover))


def _size(expr: BoolExpr) -> Tuple[int, int]:
    literals = sum(1 for _ in _leaves(expr))
    return expr.gate_equivalents, literals


def _leaves(expr: BoolExpr):
    if not expr.children:
        yield expr
    for child in expr.children:
        yield from _leaves(child)


def _rebuild(expr: BoolExpr, minimize_cap: int) -> BoolExpr:
    children = [simplify(c, minimize_cap) for c in expr.children]
    builders = {
        ExprKind.AND: make_and,
        ExprKind.OR: make_or,
        ExprKind.XOR: make_xor,
        ExprKind.XNOR: make_xnor,
        ExprKind.NOT: make_not,
    }
    return builders[expr.kind](*children)


def simplify(expr: BoolExpr, minimize_cap: int = 12) -> BoolExpr:
    """
    Return a smaller equivalent expression.

    Constants and literals are returned as is. When the support fits the cap
    the function is tabulated: constants fold, parity functions become
    XOR/XNOR, otherwise the smaller of the minimized SOP and POS is taken
    (SOP on ties) unless the input is already strictly smaller.

    Args:
        expr: Expression to simplify.
        minimize_cap: Largest support that is tabulated and minimized.

    Returns:
        An expression with the same truth table.
    """
    if expr.is_const or expr.is_literal:
        return expr
    support = sorted(expr.variables)
    if len(support) > minimize_cap:
        logger.debug(f"Support {len(support)} above cap {minimize_cap}, local rules only")
        return _rebuild(expr, minimize_cap)

    relevant = TruthTable.from_expr(expr, support).depends_on_vars()
    if not relevant:
        return make_const(TruthTable.from_expr(expr, support).value_at(0))
    # Irrelevant variables can be fixed to any value
    assume = {v: 0 for v in support if v not in relevant}
    table = TruthTable.from_expr(expr, relevant, assume=assume)

    if len(relevant) == 1:
        return make_literal(relevant[0], negated=table.value_at(0) == 1)
    if table.is_parity():
        return make_xor(*(make_var(v) for v in relevant), make_const(table.value_at(0)))

    sop = sum_of_products(table)
    pos = product_of_sums(table)
    best = pos if _size(pos) < _size(sop) else sop
    if _size(expr) < _size(best):
        return expr
    return best
