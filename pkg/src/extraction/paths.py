"""
Path Classification

Splits primary inputs into constrained ones (a dependency path reaches a
primary output) and unconstrained ones (any value satisfies the CNF).
"""

from collections import deque
from dataclasses import dataclass
from typing import Dict, Set, Tuple

from .extractor import ExtractionResult


@dataclass(frozen=True)
class PathClassification:
    """Primary inputs partitioned by reachability of an output, in PI order."""
    constrained_pi: Tuple[int, ...]
    unconstrained_pi: Tuple[int, ...]

    @property
    def num_constrained(self) -> int:
        return len(self.constrained_pi)

    @property
    def num_unconstrained(self) -> int:
        return len(self.unconstrained_pi)


def output_cone(result: ExtractionResult) -> Set[int]:
    """Variables (defined or input) on which some primary output depends."""
    supports: Dict[int, Tuple[int, ...]] = {
        d.var: tuple(d.expr.variables) for d in result.be
    }
    reached: Set[int] = set()
    queue = deque(out.var for out in result.po)
    while queue:
        var = queue.popleft()
        if var in reached:
            continue
        reached.add(var)
        queue.extend(v for v in supports.get(var, ()) if v not in reached)
    return reached


def classify_paths(result: ExtractionResult) -> PathClassification:
    """
    Classify primary inputs by reverse reachability from the outputs.

    Args:
        result: A finished extraction.

    Returns:
        PathClassification with both tuples in PI order.
    """
    cone = output_cone(result)
    constrained = tuple(v for v in result.pi if v in cone)
    unconstrained = tuple(v for v in result.pi if v not in cone)
    return PathClassification(constrained, unconstrained)
