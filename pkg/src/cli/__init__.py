"""
CLI module - command implementations for the sat-circuit-sampler entry point.
"""

from .commands import (
    ExitCode,
    InputError,
    cache_path,
    cmd_bench,
    cmd_sample,
    cmd_transform,
    cmd_verify,
    load_pipeline,
    transform_stats,
)

__all__ = [
    "ExitCode",
    "InputError",
    "cache_path",
    "cmd_bench",
    "cmd_sample",
    "cmd_transform",
    "cmd_verify",
    "load_pipeline",
    "transform_stats",
]
