"""
Logic module - Boolean expressions, truth tables and minimization.
"""

from .expr import (
    BoolExpr,
    ExprKind,
    ExpressionError,
    eval_expr,
    from_json_obj,
    make_and,
    make_const,
    make_literal,
    make_not,
    make_or,
    make_var,
    make_xnor,
    make_xor,
    support,
    to_infix,
    to_json_obj,
)
from .truth_table import ComplementCheck, TruthTable, equivalent, is_complement
from .minimize import simplify
from .clauses import clauses_expr, find_boolean_expression
from .decompose import (
    DecomposedGate,
    GateKind,
    apply_gate,
    decompose_two_input,
    evaluate_decomposition,
)

__all__ = [
    "BoolExpr",
    "ExprKind",
    "ExpressionError",
    "eval_expr",
    "from_json_obj",
    "make_and",
    "make_const",
    "make_literal",
    "make_not",
    "make_or",
    "make_var",
    "make_xnor",
    "make_xor",
    "support",
    "to_infix",
    "to_json_obj",
    "ComplementCheck",
    "TruthTable",
    "equivalent",
    "is_complement",
    "simplify",
    "clauses_expr",
    "find_boolean_expression",
    "DecomposedGate",
    "GateKind",
    "apply_gate",
    "decompose_two_input",
    "evaluate_decomposition",
]
