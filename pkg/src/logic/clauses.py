"""
Clause Group Expressions

Derives the Boolean expression a clause group imposes on one literal.
"""

from typing import Sequence

from ..cnf.formula import Clause, Literal
from .expr import BoolExpr, make_and, make_literal, make_or


def literal_expr(literal: Literal) -> BoolExpr:
    return make_literal(literal.var, literal.negated)


def find_boolean_expression(target: Literal, clauses: Sequence[Clause]) -> BoolExpr:
    """
    Expression that `target` must follow for the clauses to hold.

    Each clause containing the negation of `target` contributes the
    disjunction of its remaining literals; the contributions are conjoined.
    Clauses without the negated target are already satisfied and ignored.

    Args:
        target: The literal whose value is being derived.
        clauses: The clause group read so far.

    Returns:
        The conjunction (Const 1 when no clause contributes).

    Example:
        clauses (~x4 | ~x11 | x5), (~x4 | x11 | ~x5), (x4 | ~x12 | x5), (x4 | x12 | ~x5)
        target x5  -> (~x4 | x11) & (x4 | x12)
        target ~x5 -> (~x4 | ~x11) & (x4 | ~x12)
    """
    negation = -target
    terms = []
    for clause in clauses:
        if negation not in clause:
            continue
        rest = [literal_expr(lit) for lit in clause if lit != negation]
        terms.append(make_or(*rest))
    return make_and(*terms)


def clauses_expr(clauses: Sequence[Clause]) -> BoolExpr:
    """Conjunction of the clause disjunctions."""
    return make_and(*(make_or(*(literal_expr(lit) for lit in clause)) for clause in clauses))
