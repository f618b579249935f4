"""
Relaxation module - probabilistic circuit evaluation and gradients.
"""

from .probabilistic import (
    ForwardTape,
    RelaxationError,
    RelaxedCircuit,
    embed,
    gd_step,
    harden,
    loss,
)

__all__ = [
    "ForwardTape",
    "RelaxationError",
    "RelaxedCircuit",
    "embed",
    "gd_step",
    "harden",
    "loss",
]
