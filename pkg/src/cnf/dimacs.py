"""
DIMACS Reader/Writer

Parses and writes DIMACS CNF text. Clause order is preserved exactly because
circuit extraction reads clauses in file order.
"""

import logging
from pathlib import Path
from typing import List, Optional, Union

from .formula import Clause, CnfFormula, Literal


logger = logging.getLogger(__name__)


class DimacsParseError(Exception):
    """Exception raised when DIMACS text is malformed."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def parse_dimacs(text: str, strict: bool = False) -> CnfFormula:
    """
    Parse DIMACS CNF text.

    Comment lines start with `c`; a single `p cnf <vars> <clauses>` header
    precedes the clauses; clauses are whitespace-separated nonzero integers
    terminated by 0 and may span lines. A line starting with `%` ends the
    clause section (SATLIB convention).

    Args:
        text: The DIMACS text.
        strict: Raise instead of warning when the header clause count is stale.

    Returns:
        CnfFormula with clauses in file order and comments preserved.

    Raises:
        DimacsParseError: On missing/duplicate header, out-of-range literals,
            empty or unterminated clauses, or non-integer tokens.
    """
    num_vars: Optional[int] = None
    declared_clauses = 0
    clauses: List[Clause] = []
    comments: List[str] = []
    current: List[int] = []
    current_line = 0

    for line_number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line:
            continue
        if line.startswith("c"):
            comments.append(line[1:].strip())
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            if num_vars is not None:
                raise DimacsParseError("duplicate problem header", line_number)
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsParseError(f"malformed header '{line}'", line_number)
            try:
                num_vars = int(parts[2])
                declared_clauses = int(parts[3])
            except ValueError:
                raise DimacsParseError(f"malformed header '{line}'", line_number)
            if num_vars < 0 or declared_clauses < 0:
                raise DimacsParseError("negative counts in header", line_number)
            continue

        if num_vars is None:
            raise DimacsParseError("clause data before 'p cnf' header", line_number)

        for token in line.split():
            try:
                value = int(token)
            except ValueError:
                raise DimacsParseError(f"invalid token '{token}'", line_number)
            if value == 0:
                if not current:
                    raise DimacsParseError("empty clause", line_number)
                clauses.append(Clause(tuple(Literal.from_int(v) for v in current)))
                current = []
                continue
            if abs(value) > num_vars:
                raise DimacsParseError(
                    f"literal {value} exceeds declared variable count {num_vars}",
                    line_number,
                )
            if not current:
                current_line = line_number
            current.append(value)

    if num_vars is None:
        raise DimacsParseError("missing 'p cnf' header")
    if current:
        raise DimacsParseError("last clause is not terminated by 0", current_line)

    if len(clauses) != declared_clauses:
        message = (
            f"header declares {declared_clauses} clauses, found {len(clauses)}"
        )
        if strict:
            raise DimacsParseError(message)
        logger.warning(f"{message}; using the clauses found")

    return CnfFormula(num_vars=num_vars, clauses=clauses, comments=comments)


def read_dimacs(path: Union[str, Path], strict: bool = False) -> CnfFormula:
    """Read and parse a DIMACS file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise DimacsParseError(f"not UTF-8 text (byte offset {e.start})")
    return parse_dimacs(text, strict=strict)


def write_dimacs(cnf: CnfFormula) -> str:
    """
    Render a formula as DIMACS text.

    Comments are written first, then the header, then one clause per line.
    """
    lines = [f"c {comment}".rstrip() for comment in cnf.comments]
    lines.append(f"p cnf {cnf.num_vars} {cnf.num_clauses}")
    for clause in cnf.clauses:
        lines.append(" ".join(str(v) for v in clause.to_ints()) + " 0")
    return "\n".join(lines) + "\n"
