"""
Sampling module - gradient-descent solution sampling and solution files.
"""

from .sampler import (
    GradientSampler,
    RunStats,
    SamplerError,
    SolutionSet,
    dedupe_key,
    init_soft_inputs,
    make_rng,
    run,
)
from .solutions import format_solution, parse_solutions, read_solutions, write_solutions

__all__ = [
    "GradientSampler",
    "RunStats",
    "SamplerError",
    "SolutionSet",
    "dedupe_key",
    "init_soft_inputs",
    "make_rng",
    "run",
    "format_solution",
    "parse_solutions",
    "read_solutions",
    "write_solutions",
]
