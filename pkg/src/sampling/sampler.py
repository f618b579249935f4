"""
Gradient Sampler

Draws satisfying assignments by gradient descent on the probabilistic
relaxation of an extracted circuit. After every iteration (and once before
the first step) the soft inputs are hardened, unconstrained inputs get fresh
random bits, intermediate values are propagated through the discrete
circuit and every row is verified against the original CNF. Only verified,
previously unseen assignments are kept.
"""

import logging
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..circuit.netlist import Circuit, evaluate_batch, project_assignments
from ..cnf.formula import Assignment, ClauseMatrix, CnfFormula
from ..config import SamplerConfig
from ..extraction.extractor import ExtractionResult
from ..extraction.paths import PathClassification, classify_paths
from ..relaxation.probabilistic import RelaxedCircuit, embed, gd_step, harden, loss


logger = logging.getLogger(__name__)

STREAM_INIT = 0
STREAM_FREE = 1


class SamplerError(Exception):
    """Exception raised for invalid sampler settings or solution files."""
    pass


def make_rng(seed: int, restart: int = 0, iteration: int = 0, stream: int = 0) -> np.random.Generator:
    """Counter-based generator keyed by (seed, restart, iteration, stream)."""
    sequence = np.random.SeedSequence([seed, restart, iteration, stream])
    return np.random.Generator(np.random.Philox(sequence))


def init_soft_inputs(
    batch_size: int,
    num_inputs: int,
    rng: np.random.Generator,
    scale: float = 1.0,
    dtype: str = "float64",
) -> np.ndarray:
    """Soft inputs drawn i.i.d. uniform on [-scale, scale]."""
    if batch_size < 1:
        raise SamplerError(f"batch_size must be >= 1, got {batch_size}")
    V = rng.uniform(-scale, scale, size=(batch_size, num_inputs))
    return V.astype(dtype, copy=False)


def dedupe_key(assignment: Union[Assignment, Sequence[int], np.ndarray]) -> bytes:
    """Packed bit vector of x1..xn; equal assignments give equal keys."""
    if isinstance(assignment, Assignment):
        assignment = assignment.values
    return np.packbits(np.asarray(assignment, dtype=np.uint8)).tobytes()


class SolutionSet:
    """
    Insertion-ordered set of distinct assignments over x1..xn.

    Usage:
        solutions = SolutionSet(num_vars=14)
        added = solutions.add_rows(bits)
        for assignment in solutions: ...
    """

    def __init__(self, num_vars: int):
        self.num_vars = num_vars
        self._rows: Dict[bytes, np.ndarray] = {}

    def add(self, assignment: Union[Assignment, Sequence[int], np.ndarray]) -> bool:
        """Insert one assignment; returns False if it was already present."""
        values = assignment.values if isinstance(assignment, Assignment) else assignment
        row = np.asarray(values, dtype=np.uint8)
        if row.shape != (self.num_vars,):
            raise SamplerError(f"Expected {self.num_vars} values, got {row.shape}")
        key = dedupe_key(row)
        if key in self._rows:
            return False
        self._rows[key] = row.copy()
        return True

    def add_rows(self, bits: np.ndarray, limit: Optional[int] = None) -> int:
        """
        Insert rows of a (batch, num_vars) 0/1 matrix in row order.

        Args:
            bits: Rows to insert.
            limit: Stop once the set holds this many assignments.

        Returns:
            Number of new assignments inserted.
        """
        bits = np.asarray(bits, dtype=np.uint8)
        if bits.size == 0:
            return 0
        packed = np.packbits(bits, axis=1)
        added = 0
        for i in range(bits.shape[0]):
            if limit is not None and len(self._rows) >= limit:
                break
            key = packed[i].tobytes()
            if key not in self._rows:
                self._rows[key] = bits[i].copy()
                added += 1
        return added

    def __contains__(self, assignment: Union[Assignment, Sequence[int], np.ndarray]) -> bool:
        return dedupe_key(assignment) in self._rows

    def __len__(self) -> int:
        return len(self._rows)

    def __iter__(self) -> Iterator[Assignment]:
        for row in self._rows.values():
            yield Assignment(row.tolist())

    def to_array(self) -> np.ndarray:
        if not self._rows:
            return np.zeros((0, self.num_vars), dtype=np.uint8)
        return np.stack(list(self._rows.values()))


@dataclass
class RunStats:
    """Counters and traces of one sampling run."""
    unique_count: int = 0
    attempts: int = 0
    satisfying_rows: int = 0
    wall_time: float = 0.0
    throughput: float = 0.0
    iterations_run: int = 0
    restarts: int = 0
    timed_out: bool = False
    quota_met: bool = False
    diagnostic: Optional[str] = None
    loss_trace: List[float] = field(default_factory=list)
    new_unique_per_iteration: List[int] = field(default_factory=list)
    cumulative_unique: List[int] = field(default_factory=list)

    def to_dict(self, include_timing: bool = True) -> Dict[str, Any]:
        data = asdict(self)
        if not include_timing:
            data.pop("wall_time")
            data.pop("throughput")
        return data


class GradientSampler:
    """
    Gradient-descent sampler over an extracted circuit.

    Usage:
        sampler = GradientSampler(cnf, circuit, result, config=SamplerConfig(batch_size=256))
        solutions, stats = sampler.run()
    """

    def __init__(
        self,
        cnf: CnfFormula,
        circuit: Circuit,
        result: ExtractionResult,
        classification: Optional[PathClassification] = None,
        config: Optional[SamplerConfig] = None,
    ):
        """
        Initialize the sampler.

        Args:
            cnf: The original formula every sample is verified against.
            circuit: Circuit built from the extraction of `cnf`.
            result: That extraction.
            classification: Constrained/unconstrained split of the inputs.
            config: Sampler settings; defaults are used when omitted.

        Raises:
            SamplerError: If the configuration is invalid.
        """
        self.config = config or SamplerConfig()
        try:
            self.config.validate()
        except ValueError as e:
            raise SamplerError(str(e))
        self.cnf = cnf
        self.circuit = circuit
        self.result = result
        self.classification = classification or classify_paths(result)
        self.constrained = list(self.classification.constrained_pi)
        self.unconstrained = list(self.classification.unconstrained_pi)
        self.relaxed = RelaxedCircuit(
            circuit,
            input_vars=self.constrained,
            workers=self.config.workers,
            dtype=self.config.dtype,
        )
        self.matrix = ClauseMatrix(cnf)
        # Column of each circuit input inside the constrained / free blocks
        order = {var: j for j, var in enumerate(self.constrained)}
        free = {var: j for j, var in enumerate(self.unconstrained)}
        self._input_source = [
            (True, order[var]) if var in order else (False, free[var])
            for var in circuit.input_vars
        ]

    def _harvest(
        self,
        V: np.ndarray,
        restart: int,
        iteration: int,
        solutions: SolutionSet,
        stats: RunStats,
    ) -> int:
        cfg = self.config
        batch = V.shape[0]
        hard = harden(V)
        rng = make_rng(cfg.seed, restart, iteration, STREAM_FREE)
        free_bits = rng.integers(0, 2, size=(batch, len(self.unconstrained)), dtype=np.uint8)
        inputs = np.empty((batch, len(self._input_source)), dtype=np.uint8)
        for column, (constrained, j) in enumerate(self._input_source):
            inputs[:, column] = hard[:, j] if constrained else free_bits[:, j]

        bits = project_assignments(self.circuit, evaluate_batch(self.circuit, inputs))
        satisfied = self.matrix.satisfied_rows(bits)
        stats.attempts += batch
        stats.satisfying_rows += int(satisfied.sum())
        added = solutions.add_rows(bits[satisfied], limit=cfg.max_solutions)
        stats.new_unique_per_iteration.append(added)
        stats.cumulative_unique.append(len(solutions))
        logger.debug(
            f"restart {restart} iteration {iteration}: {int(satisfied.sum())}/{batch} "
            f"satisfying, {added} new, {len(solutions)} unique"
        )
        return added

    def run(self) -> Tuple[SolutionSet, RunStats]:
        """
        Sample until the quota, the timeout or the iteration budget is reached.

        Returns:
            (solutions, stats). An extraction that is UNSAT by construction
            yields an empty set with `stats.diagnostic` set.
        """
        cfg = self.config
        solutions = SolutionSet(self.cnf.num_vars)
        stats = RunStats()
        start = time.perf_counter()

        if self.result.is_unsat:
            stats.diagnostic = f"UNSAT by construction: {self.result.unsat_reason}"
            logger.warning(stats.diagnostic)
            return solutions, stats

        targets = self.relaxed.targets
        restart = 0
        done = False
        while not done:
            rng = make_rng(cfg.seed, restart, 0, STREAM_INIT)
            V = init_soft_inputs(cfg.batch_size, len(self.constrained), rng, cfg.init_scale, cfg.dtype)
            for iteration in range(cfg.iterations + 1):
                self._harvest(V, restart, iteration, solutions, stats)
                if len(solutions) >= cfg.max_solutions:
                    stats.quota_met = True
                    done = True
                    break
                if time.perf_counter() - start > cfg.timeout:
                    stats.timed_out = True
                    done = True
                    break
                if iteration == cfg.iterations:
                    break
                P = embed(V).astype(self.relaxed.dtype, copy=False)
                Y, tape = self.relaxed.forward(P)
                _, per_row = loss(Y, targets)
                stats.loss_trace.append(float(per_row.mean()))
                grad = self.relaxed.backward(tape, Y, targets, V)
                V = gd_step(V, grad, cfg.learning_rate)
                stats.iterations_run += 1
            if done:
                break
            if cfg.restart_policy != "reinit_on_exhaust" or restart >= cfg.max_restarts:
                break
            restart += 1
            stats.restarts = restart

        stats.unique_count = len(solutions)
        stats.wall_time = time.perf_counter() - start
        stats.throughput = stats.unique_count / stats.wall_time if stats.wall_time > 0 else 0.0
        logger.info(
            f"Sampled {stats.unique_count} unique solutions from {stats.attempts} rows "
            f"in {stats.wall_time:.3f}s ({stats.throughput:.1f}/s, {stats.restarts} restarts)"
        )
        return solutions, stats


def run(
    cnf: CnfFormula,
    circuit: Circuit,
    result: ExtractionResult,
    classification: Optional[PathClassification] = None,
    config: Optional[SamplerConfig] = None,
) -> Tuple[SolutionSet, RunStats]:
    """Build a GradientSampler and run it once."""
    return GradientSampler(cnf, circuit, result, classification, config).run()
