"""
CNF Formula

Literals, clauses, formulas and assignments, plus the clause-level
satisfaction oracle used to verify every emitted sample.
"""

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Sequence, Tuple

import numpy as np


class AssignmentError(Exception):
    """Exception raised when an assignment is partial or malformed."""
    pass


@dataclass(frozen=True)
class Literal:
    """A Boolean variable (1-based DIMACS index) or its negation."""
    var: int
    negated: bool = False

    def __post_init__(self):
        if self.var < 1:
            raise ValueError(f"Variable index must be >= 1, got {self.var}")

    @classmethod
    def from_int(cls, value: int) -> "Literal":
        """Build a literal from a signed DIMACS integer."""
        if value == 0:
            raise ValueError("0 is the clause terminator, not a literal")
        return cls(abs(value), value < 0)

    def to_int(self) -> int:
        """Get the signed DIMACS integer for this literal."""
        return -self.var if self.negated else self.var

    def __neg__(self) -> "Literal":
        return Literal(self.var, not self.negated)

    def is_satisfied_by(self, value: int) -> bool:
        """Check whether the literal is true when its variable takes `value`."""
        return bool(value) != self.negated

    def __str__(self) -> str:
        return f"~x{self.var}" if self.negated else f"x{self.var}"


@dataclass(frozen=True)
class Clause:
    """A disjunction of literals, in source order, without duplicates."""
    literals: Tuple[Literal, ...]

    def __post_init__(self):
        if not self.literals:
            raise ValueError("A clause needs at least one literal")
        # Duplicate literals are dropped silently, first occurrence wins
        unique = tuple(dict.fromkeys(self.literals))
        if len(unique) != len(self.literals):
            object.__setattr__(self, "literals", unique)

    @classmethod
    def from_ints(cls, values: Iterable[int]) -> "Clause":
        """Build a clause from signed DIMACS integers."""
        return cls(tuple(Literal.from_int(v) for v in values))

    def to_ints(self) -> List[int]:
        """Get the clause as signed DIMACS integers."""
        return [lit.to_int() for lit in self.literals]

    @property
    def variables(self) -> FrozenSet[int]:
        """Set of variable indices occurring in the clause."""
        return frozenset(lit.var for lit in self.literals)

    @property
    def is_tautology(self) -> bool:
        """Check if the clause contains a complementary pair of literals."""
        return any(-lit in self.literals for lit in self.literals)

    def __contains__(self, literal: Literal) -> bool:
        return literal in self.literals

    def __len__(self) -> int:
        return len(self.literals)

    def __iter__(self) -> Iterator[Literal]:
        return iter(self.literals)

    def __str__(self) -> str:
        return "(" + " | ".join(str(lit) for lit in self.literals) + ")"


@dataclass
class CnfFormula:
    """A parsed DIMACS instance. Clause order follows the source file."""
    num_vars: int
    clauses: List[Clause] = field(default_factory=list)
    comments: List[str] = field(default_factory=list)

    def __post_init__(self):
        for index, clause in enumerate(self.clauses):
            for lit in clause:
                if lit.var > self.num_vars:
                    raise ValueError(
                        f"Clause {index} uses x{lit.var} but the formula has "
                        f"{self.num_vars} variables"
                    )

    @classmethod
    def from_ints(cls, num_vars: int, clauses: Iterable[Iterable[int]]) -> "CnfFormula":
        """Build a formula from lists of signed DIMACS integers."""
        return cls(num_vars=num_vars, clauses=[Clause.from_ints(c) for c in clauses])

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def used_variables(self) -> FrozenSet[int]:
        """Variables that occur in at least one clause."""
        used = set()
        for clause in self.clauses:
            used.update(clause.variables)
        return frozenset(used)


class Assignment:
    """
    Total assignment of {0,1} values to variables 1..num_vars.

    Usage:
        a = Assignment.from_mapping({1: 1, 2: 0}, num_vars=2)
        print(a[1], a.to_literals())
    """

    def __init__(self, values: Sequence[int]):
        """
        Initialize the assignment.

        Args:
            values: Values of x1..xn in order (index 0 holds x1).
        """
        bits = tuple(int(v) for v in values)
        if any(b not in (0, 1) for b in bits):
            raise AssignmentError("Assignment values must be 0 or 1")
        self._values = bits

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int], num_vars: int) -> "Assignment":
        """Build an assignment from a var -> value map covering 1..num_vars."""
        missing = [v for v in range(1, num_vars + 1) if v not in mapping]
        if missing:
            raise AssignmentError(
                f"Assignment is partial: {len(missing)} variables unassigned "
                f"(first: x{missing[0]})"
            )
        return cls([mapping[v] for v in range(1, num_vars + 1)])

    @classmethod
    def from_literals(cls, literals: Iterable[int], num_vars: int) -> "Assignment":
        """Build an assignment from signed literals (model-line convention)."""
        mapping: Dict[int, int] = {}
        for value in literals:
            var = abs(value)
            if var == 0 or var > num_vars:
                raise AssignmentError(f"Literal {value} outside 1..{num_vars}")
            bit = 0 if value < 0 else 1
            if mapping.get(var, bit) != bit:
                raise AssignmentError(f"x{var} assigned both polarities")
            mapping[var] = bit
        return cls.from_mapping(mapping, num_vars)

    @property
    def num_vars(self) -> int:
        return len(self._values)

    @property
    def values(self) -> Tuple[int, ...]:
        return self._values

    def __getitem__(self, var: int) -> int:
        if var < 1 or var > len(self._values):
            raise AssignmentError(f"x{var} is not covered by this assignment")
        return self._values[var - 1]

    def to_literals(self) -> List[int]:
        """Signed literals in ascending variable order."""
        return [v if bit else -v for v, bit in enumerate(self._values, start=1)]

    def as_dict(self) -> Dict[int, int]:
        return {v: bit for v, bit in enumerate(self._values, start=1)}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Assignment):
            return NotImplemented
        return self._values == other._values

    def __hash__(self) -> int:
        return hash(self._values)

    def __repr__(self) -> str:
        return f"Assignment({self.to_literals()})"


def eval_cnf(cnf: CnfFormula, assignment: Assignment) -> bool:
    """
    Check whether every clause has at least one satisfied literal.

    Args:
        cnf: The formula.
        assignment: Total assignment over 1..cnf.num_vars.

    Returns:
        True iff the assignment satisfies the formula.

    Raises:
        AssignmentError: If the assignment does not cover every variable.
    """
    if assignment.num_vars < cnf.num_vars:
        raise AssignmentError(
            f"Assignment covers {assignment.num_vars} variables, "
            f"formula has {cnf.num_vars}"
        )
    values = assignment.values
    for clause in cnf.clauses:
        if not any(lit.is_satisfied_by(values[lit.var - 1]) for lit in clause):
            return False
    return True


class ClauseMatrix:
    """
    Vectorized clause checker for batches of assignments.

    Clauses are padded to a common width with an always-false literal so a
    whole batch is verified with a few numpy operations.

    Usage:
        matrix = ClauseMatrix(cnf)
        ok = matrix.satisfied_rows(bits)   # bits: (batch, num_vars) of 0/1
    """

    def __init__(self, cnf: CnfFormula, max_cells: int = 1 << 24):
        """
        Initialize the checker.

        Args:
            cnf: The formula to verify against.
            max_cells: Upper bound on rows*clauses*width per numpy chunk.
        """
        self.num_vars = cnf.num_vars
        self.num_clauses = cnf.num_clauses
        width = max((len(c) for c in cnf.clauses), default=1)
        self._width = width
        # Column num_vars of the extended matrix is a constant-0 column
        self._columns = np.full((self.num_clauses, width), self.num_vars, dtype=np.int64)
        self._negated = np.zeros((self.num_clauses, width), dtype=bool)
        for i, clause in enumerate(cnf.clauses):
            for j, lit in enumerate(clause):
                self._columns[i, j] = lit.var - 1
                self._negated[i, j] = lit.negated
        per_row = max(1, self.num_clauses * width)
        self._chunk_rows = max(1, max_cells // per_row)

    def satisfied_rows(self, bits: np.ndarray) -> np.ndarray:
        """
        Verify a batch of total assignments.

        Args:
            bits: Array of shape (batch, num_vars) holding 0/1 values of x1..xn.

        Returns:
            Boolean array of shape (batch,).
        """
        bits = np.asarray(bits)
        if bits.ndim != 2 or bits.shape[1] < self.num_vars:
            raise AssignmentError(
                f"Expected (batch, {self.num_vars}) assignments, got {bits.shape}"
            )
        batch = bits.shape[0]
        result = np.ones(batch, dtype=bool)
        if self.num_clauses == 0:
            return result
        extended = np.zeros((batch, self.num_vars + 1), dtype=bool)
        extended[:, :self.num_vars] = bits[:, :self.num_vars] != 0
        for start in range(0, batch, self._chunk_rows):
            block = extended[start:start + self._chunk_rows]
            literal_values = block[:, self._columns]
            literal_values ^= self._negated
            # Padding cells read the constant-0 column; negation flag is False there
            result[start:start + self._chunk_rows] = literal_values.any(axis=2).all(axis=1)
        return result

    def first_violated_clause(self, bits: Sequence[int]) -> int:
        """Index of the first clause violated by one assignment, or -1."""
        row = np.asarray(bits).reshape(1, -1)
        extended = np.zeros((1, self.num_vars + 1), dtype=bool)
        extended[:, :self.num_vars] = row[:, :self.num_vars] != 0
        values = extended[:, self._columns] ^ self._negated
        satisfied = values.any(axis=2)[0]
        violated = np.flatnonzero(~satisfied)
        return int(violated[0]) if violated.size else -1
