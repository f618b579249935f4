"""
CNF Extractor

Recovers a multi-level, multi-output Boolean function from a CNF by reading
clauses in order, accumulating them in a sub-clause buffer and committing a
definition v = f as soon as the buffered clauses force v to be the complement
of what they force on NOT v. Variables are classified as primary inputs,
intermediate variables or primary outputs (variables forced to a constant).
Clauses that never define a variable are kept exactly through auxiliary
output variables constrained to 1.
"""

import logging
import time
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Mapping, NamedTuple, Optional, Sequence, Set, Tuple

from ..cnf.formula import Clause, CnfFormula, Literal
from ..config import ExtractorConfig
from ..logic.clauses import clauses_expr, find_boolean_expression
from ..logic.expr import BoolExpr, eval_expr
from ..logic.minimize import simplify
from ..logic.truth_table import ComplementCheck, is_complement


logger = logging.getLogger(__name__)


class ExtractionError(Exception):
    """Exception raised when an extraction invariant is violated."""
    pass


class OutputTarget(NamedTuple):
    """A primary output and the constant it is forced to."""
    var: int
    target: int


class Definition(NamedTuple):
    """A recovered sub-expression: `var` is driven by `expr`."""
    var: int
    expr: BoolExpr
    aux: bool = False


@dataclass
class ExtractionStats:
    """Counters collected during one extraction."""
    wall_time: float = 0.0
    num_clauses: int = 0
    tautologies_dropped: int = 0
    definitions: int = 0
    promotions: int = 0
    fallback_definitions: int = 0
    complement_checks: int = 0
    undecided_checks: int = 0

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)


@dataclass
class ExtractionResult:
    """
    Roles and definitions recovered from a CNF.

    `pi` lists primary inputs in classification order, `iv` intermediate
    variables, `po` primary outputs with targets and `be` the definitions in
    discovery order. Auxiliary variables are numbered from num_vars + 1.
    """
    num_vars: int
    pi: List[int] = field(default_factory=list)
    iv: List[int] = field(default_factory=list)
    po: List[OutputTarget] = field(default_factory=list)
    be: List[Definition] = field(default_factory=list)
    aux: List[int] = field(default_factory=list)
    unsat_reason: Optional[str] = None
    stats: ExtractionStats = field(default_factory=ExtractionStats)

    @property
    def is_unsat(self) -> bool:
        return self.unsat_reason is not None

    @property
    def aux_base(self) -> int:
        return self.num_vars + 1

    @property
    def total_vars(self) -> int:
        return self.num_vars + len(self.aux)

    @property
    def po_vars(self) -> List[int]:
        return [out.var for out in self.po]

    def definitions(self) -> Dict[int, BoolExpr]:
        return {d.var: d.expr for d in self.be}

    def complete(self, values: Mapping[int, int]) -> Dict[int, int]:
        """
        Extend values over the CNF variables with auxiliary values.

        Auxiliary variables are computed from their definitions.
        """
        full = dict(values)
        for definition in self.be:
            if definition.aux:
                full[definition.var] = eval_expr(definition.expr, full)
        return full

    def is_consistent(self, values: Mapping[int, int]) -> bool:
        """
        Check an assignment over the CNF variables against every definition
        and every output target.

        Raises:
            ExpressionError: If a definition reads an unassigned variable.
        """
        full = self.complete(values)
        for definition in self.be:
            if eval_expr(definition.expr, full) != full[definition.var]:
                return False
        return all(full[out.var] == out.target for out in self.po)


class SubClauseBuffer:
    """
    Ordered clause buffer with first-appearance variable order.

    Usage:
        buffer = SubClauseBuffer()
        buffer.append(clause)
        if buffer.shares_variables(next_clause): ...
    """

    def __init__(self, clauses: Sequence[Clause] = ()):
        self._clauses: List[Clause] = []
        self._variables: Dict[int, None] = {}
        for clause in clauses:
            self.append(clause)

    @property
    def clauses(self) -> List[Clause]:
        return list(self._clauses)

    @property
    def variables(self) -> List[int]:
        return list(self._variables)

    def append(self, clause: Clause) -> None:
        self._clauses.append(clause)
        for lit in clause:
            self._variables.setdefault(lit.var, None)

    def shares_variables(self, clause: Clause) -> bool:
        return any(lit.var in self._variables for lit in clause)

    def reset(self, residue: Sequence[Clause] = ()) -> None:
        """Replace the content with `residue` (empty by default)."""
        self._clauses = []
        self._variables = {}
        for clause in residue:
            self.append(clause)

    def __len__(self) -> int:
        return len(self._clauses)

    def __bool__(self) -> bool:
        return bool(self._clauses)


def candidate_scan_order(buffer: SubClauseBuffer) -> List[int]:
    """Buffered variables in order of first appearance."""
    return buffer.variables


@dataclass
class FallbackDefinition:
    """Definition emitted for clauses that never defined a variable."""
    expr: BoolExpr
    aux_var: int
    target: int = 1


class CnfExtractor:
    """
    Order-sensitive CNF-to-circuit extractor.

    Usage:
        extractor = CnfExtractor(ExtractorConfig())
        result = extractor.extract(cnf)
        print(result.pi, result.po)
    """

    def __init__(self, config: Optional[ExtractorConfig] = None):
        """
        Initialize the extractor.

        Args:
            config: Extraction settings; defaults are used when omitted.
        """
        self.config = config or ExtractorConfig()
        self.config.validate()
        self._result: Optional[ExtractionResult] = None
        self._roles: Dict[int, str] = {}

    def extract(self, cnf: CnfFormula) -> ExtractionResult:
        """
        Transform a CNF into definitions, roles and output targets.

        Args:
            cnf: The formula; clause order matters.

        Returns:
            ExtractionResult. If the clauses are contradictory by
            construction, `unsat_reason` is set and extraction stops.

        Raises:
            ExtractionError: If an internal invariant is violated.
        """
        start = time.perf_counter()
        result = ExtractionResult(num_vars=cnf.num_vars)
        result.stats.num_clauses = cnf.num_clauses
        self._result = result
        self._roles = {}

        clauses = []
        for clause in cnf.clauses:
            if clause.is_tautology:
                result.stats.tautologies_dropped += 1
            else:
                clauses.append(clause)

        buffer = SubClauseBuffer()
        max_pending = self.config.max_pending_clauses
        for index, clause in enumerate(clauses):
            if result.is_unsat:
                break
            if buffer and not buffer.shares_variables(clause):
                self.handle_underspecified(buffer, clauses[index:index + 1])
                if result.is_unsat:
                    break
            buffer.append(clause)
            self._try_commit(buffer)
            if max_pending and len(buffer) >= max_pending:
                logger.debug(f"Sub-clause buffer reached {max_pending} clauses")
                self.handle_underspecified(buffer, clauses[index + 1:], force=True)

        if buffer and not result.is_unsat:
            self.handle_underspecified(buffer, [])

        for var in range(1, cnf.num_vars + 1):
            if var not in self._roles:
                self._assign_input(var)

        result.stats.wall_time = time.perf_counter() - start
        if result.stats.undecided_checks:
            logger.warning(
                f"{result.stats.undecided_checks} complement checks exceeded the "
                f"support cap of {self.config.complement_cap} variables"
            )
        logger.info(
            f"Extracted {len(result.pi)} inputs, {len(result.iv)} intermediates, "
            f"{len(result.po)} outputs ({len(result.aux)} auxiliary) from "
            f"{cnf.num_clauses} clauses in {result.stats.wall_time:.3f}s"
        )
        self._check_invariants(result)
        return result

    def _try_commit(self, buffer: SubClauseBuffer) -> None:
        clauses = buffer.clauses
        fresh: List[Tuple[int, BoolExpr]] = []
        promotion: Optional[Tuple[int, int]] = None

        for var in candidate_scan_order(buffer):
            role = self._roles.get(var)
            if role == "pi":
                continue
            f = find_boolean_expression(Literal(var), clauses)
            if role is not None and not f.is_const:
                continue
            g = find_boolean_expression(Literal(var, negated=True), clauses)
            check = is_complement(f, g, cap=self.config.complement_cap)
            self._result.stats.complement_checks += 1
            if check is ComplementCheck.UNDECIDED:
                self._result.stats.undecided_checks += 1
                continue
            if not check.is_complement:
                continue
            if role is None:
                fresh.append((var, f))
                if self.config.output_preference == "first_seen":
                    break
            elif promotion is None:
                promotion = (var, f.value)

        if fresh:
            var, f = max(fresh, key=lambda item: item[0])
            self._commit(buffer, var, f)
        elif promotion is not None:
            self._promote(buffer, *promotion)

    def _consume(self, buffer: SubClauseBuffer, var: int) -> List[Clause]:
        consumed = [c for c in buffer.clauses if Literal(var) in c or Literal(var, True) in c]
        residue = [c for c in buffer.clauses if c not in consumed]
        buffer.reset(residue)
        return consumed

    def _commit(self, buffer: SubClauseBuffer, var: int, f: BoolExpr) -> None:
        result = self._result
        expr = simplify(f, self.config.minimize_cap)
        consumed = self._consume(buffer, var)
        for clause in consumed:
            for lit in clause:
                if lit.var != var and lit.var not in self._roles:
                    self._assign_input(lit.var)
        result.be.append(Definition(var, expr))
        result.stats.definitions += 1
        if expr.is_const:
            self._roles[var] = "po"
            result.po.append(OutputTarget(var, expr.value))
        else:
            self._roles[var] = "iv"
            result.iv.append(var)
        logger.debug(f"x{var} = {expr} from {len(consumed)} clauses")

    def _promote(self, buffer: SubClauseBuffer, var: int, target: int) -> None:
        result = self._result
        self._consume(buffer, var)
        result.stats.promotions += 1
        if self._roles[var] == "po":
            current = next(out.target for out in result.po if out.var == var)
            if current != target:
                result.unsat_reason = f"x{var} is forced to both 0 and 1"
                logger.info(f"UNSAT by construction: {result.unsat_reason}")
            return
        self._roles[var] = "po"
        result.iv.remove(var)
        result.po.append(OutputTarget(var, target))
        logger.debug(f"x{var} promoted to output with target {target}")

    def _assign_input(self, var: int) -> None:
        self._roles[var] = "pi"
        self._result.pi.append(var)

    def handle_underspecified(
        self,
        buffer: SubClauseBuffer,
        next_clauses: Sequence[Clause],
        force: bool = False,
    ) -> Optional[FallbackDefinition]:
        """
        Encode buffered clauses that defined no variable through an
        auxiliary output constrained to 1.

        Fires when the buffer shares no variable with the next clause, when
        the clause stream is exhausted, or when `force` is set. Unclassified
        buffer variables become primary inputs.

        Args:
            buffer: The pending sub-clauses; emptied on success.
            next_clauses: The clauses that follow in the stream.
            force: Fire regardless of the variable-sharing test.

        Returns:
            The emitted definition, or None if the trigger did not hold.
        """
        if not buffer:
            return None
        if not force and next_clauses and buffer.shares_variables(next_clauses[0]):
            return None
        result = self._result
        if result is None:
            raise ExtractionError("handle_underspecified called outside extract()")

        expr = simplify(clauses_expr(buffer.clauses), self.config.minimize_cap)
        for var in buffer.variables:
            if var not in self._roles:
                self._assign_input(var)
        aux_var = result.num_vars + len(result.aux) + 1
        result.aux.append(aux_var)
        result.be.append(Definition(aux_var, expr, aux=True))
        result.po.append(OutputTarget(aux_var, 1))
        self._roles[aux_var] = "po"
        result.stats.fallback_definitions += 1
        logger.debug(f"x{aux_var} (auxiliary) = {expr} from {len(buffer)} clauses")
        buffer.reset()

        if expr.is_const and expr.value == 0:
            result.unsat_reason = (
                f"clauses encoded by auxiliary x{aux_var} are contradictory"
            )
            logger.info(f"UNSAT by construction: {result.unsat_reason}")
        return FallbackDefinition(expr=expr, aux_var=aux_var, target=1)

    def _check_invariants(self, result: ExtractionResult) -> None:
        defined: Set[int] = set()
        pi = set(result.pi)
        for definition in result.be:
            if definition.var in defined or definition.var in pi:
                raise ExtractionError(f"x{definition.var} is defined twice")
            for var in definition.expr.variables:
                if var not in pi and var not in defined:
                    raise ExtractionError(
                        f"Definition of x{definition.var} reads x{var} before it is classified"
                    )
            defined.add(definition.var)


def extract(cnf: CnfFormula, config: Optional[ExtractorConfig] = None) -> ExtractionResult:
    """Run a fresh CnfExtractor over `cnf`."""
    return CnfExtractor(config).extract(cnf)
