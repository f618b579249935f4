"""CNF module - DIMACS instances and the clause-level satisfaction oracle."""

from .formula import (
    Assignment,
    AssignmentError,
    Clause,
    ClauseMatrix,
    CnfFormula,
    Literal,
    eval_cnf,
)
from .dimacs import DimacsParseError, parse_dimacs, read_dimacs, write_dimacs

__all__ = [
    "Assignment",
    "AssignmentError",
    "Clause",
    "ClauseMatrix",
    "CnfFormula",
    "Literal",
    "eval_cnf",
    "DimacsParseError",
    "parse_dimacs",
    "read_dimacs",
    "write_dimacs",
]
