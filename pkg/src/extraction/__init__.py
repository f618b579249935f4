"""
Extraction module - CNF to multi-level circuit transformation.
"""

from .extractor import (
    CnfExtractor,
    Definition,
    ExtractionError,
    ExtractionResult,
    ExtractionStats,
    FallbackDefinition,
    OutputTarget,
    SubClauseBuffer,
    candidate_scan_order,
    extract,
)
from .paths import PathClassification, classify_paths, output_cone

__all__ = [
    "CnfExtractor",
    "Definition",
    "ExtractionError",
    "ExtractionResult",
    "ExtractionStats",
    "FallbackDefinition",
    "OutputTarget",
    "SubClauseBuffer",
    "candidate_scan_order",
    "extract",
    "PathClassification",
    "classify_paths",
    "output_cone",
]
