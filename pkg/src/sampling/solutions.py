"""
Solutions Files

One solution per line as signed literals in ascending variable order,
terminated by 0.
"""

from pathlib import Path
from typing import Iterable, List, Union

from ..cnf.formula import Assignment, AssignmentError
from .sampler import SamplerError


def format_solution(assignment: Assignment) -> str:
    return " ".join(str(lit) for lit in assignment.to_literals()) + " 0"


def write_solutions(assignments: Iterable[Assignment], path: Union[str, Path]) -> int:
    """Write solutions to `path`; returns the number of lines written."""
    lines = [format_solution(a) for a in assignments]
    text = "\n".join(lines) + ("\n" if lines else "")
    Path(path).write_text(text, encoding="utf-8")
    return len(lines)


def parse_solutions(text: str, num_vars: int) -> List[Assignment]:
    """
    Parse model lines; duplicates are kept.

    Lines may start with `v` (solver output convention); blank lines and
    lines starting with `c` are skipped.

    Raises:
        SamplerError: On a malformed or partial line, with its line number.
    """
    assignments: List[Assignment] = []
    for line_number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("v"):
            line = line[1:]
        try:
            values = [int(token) for token in line.split()]
        except ValueError:
            raise SamplerError(f"line {line_number}: non-integer token")
        if not values or values[-1] != 0:
            raise SamplerError(f"line {line_number}: solution is not terminated by 0")
        try:
            assignments.append(Assignment.from_literals(values[:-1], num_vars))
        except AssignmentError as e:
            raise SamplerError(f"line {line_number}: {e}")
    return assignments


def read_solutions(path: Union[str, Path], num_vars: int) -> List[Assignment]:
    """Read and parse a solutions file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise SamplerError(f"not UTF-8 text (byte offset {e.start})")
    return parse_solutions(text, num_vars)
