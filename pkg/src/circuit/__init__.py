"""
Circuit module - gate netlists, evaluation and serialization.
"""

from .netlist import (
    Circuit,
    CircuitError,
    GateCount,
    GateNode,
    build_circuit,
    cnf_gate_equivalents,
    eval_discrete,
    evaluate_batch,
    gate_equivalents,
    ops_reduction,
    project_assignments,
)
from .serialization import export_json, import_json, render_python_model

__all__ = [
    "Circuit",
    "CircuitError",
    "GateCount",
    "GateNode",
    "build_circuit",
    "cnf_gate_equivalents",
    "eval_discrete",
    "evaluate_batch",
    "gate_equivalents",
    "ops_reduction",
    "project_assignments",
    "export_json",
    "import_json",
    "render_python_model",
]
