"""
Pytest configuration and shared fixtures.
"""

import sys
from pathlib import Path
from typing import Callable

import numpy as np
import pytest

# Add the project root to path for `src.` imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from tests.generators import (  # noqa: E402
    brute_force_models,
    circuit_models,
    gate_signature_cnf,
    or_family_cnf,
    random_gate_circuit,
    random_tseitin_cnf,
)


# =============================================================================
# Environment Fixtures
# =============================================================================

@pytest.fixture(autouse=True)
def setup_test_env(monkeypatch):
    """Set up test environment variables."""
    monkeypatch.setenv("SATSAMPLER_CACHE", "false")
    monkeypatch.setenv("LOG_LEVEL", "WARNING")
    monkeypatch.delenv("DEBUG", raising=False)


# =============================================================================
# CNF Fixtures
# =============================================================================

# Two inverter/buffer chains feeding multiplexers; the last mux output is
# forced to 1.
WORKFLOW_CNF = """\
c workflow example
p cnf 14 21
c x2 = ~x1
-1 -2 0
1 2 0
c x3 = x2
-2 3 0
2 -3 0
c x4 = x3
-3 4 0
3 -4 0
c x5 = x4 ? x11 : x12
-4 -11 5 0
-4 11 -5 0
4 -12 5 0
4 12 -5 0
c x7 = x6
-6 7 0
6 -7 0
c x8 = x7
-7 8 0
7 -8 0
c x9 = ~x8
-8 -9 0
8 9 0
c x10 = x9 ? x13 : x14
-9 -13 10 0
-9 13 -10 0
9 -14 10 0
9 14 -10 0
c x10 = 1
10 0
"""


@pytest.fixture
def workflow_cnf_text() -> str:
    """DIMACS text of the 14-variable workflow example."""
    return WORKFLOW_CNF


@pytest.fixture
def workflow_cnf():
    """Parsed workflow example."""
    from src.cnf import parse_dimacs
    return parse_dimacs(WORKFLOW_CNF)


@pytest.fixture
def workflow_cnf_file(tmp_path) -> Path:
    """Workflow example written to a temporary file."""
    path = tmp_path / "workflow.cnf"
    path.write_text(WORKFLOW_CNF, encoding="utf-8")
    return path


@pytest.fixture
def workflow_pipeline(workflow_cnf):
    """(cnf, result, circuit) for the workflow example."""
    from src.circuit import build_circuit
    from src.extraction import extract
    result = extract(workflow_cnf)
    return workflow_cnf, result, build_circuit(result)


# =============================================================================
# Generator Fixtures
# =============================================================================

@pytest.fixture
def gate_signature() -> Callable:
    """Factory: CnfFormula encoding one gate over inputs x1..xn, output x(n+1)."""
    return gate_signature_cnf


@pytest.fixture
def tseitin_factory() -> Callable:
    """Factory for random Tseitin-encoded circuits."""
    return random_tseitin_cnf


@pytest.fixture
def or_family():
    """The `or-50`-like instance with a fixed seed."""
    return or_family_cnf()


@pytest.fixture
def random_circuit_factory() -> Callable:
    """Factory for random gate circuits."""
    return random_gate_circuit


@pytest.fixture
def models_oracle() -> Callable:
    """Brute-force model enumeration for CNFs up to ~16 variables."""
    return brute_force_models


@pytest.fixture
def circuit_models_oracle() -> Callable:
    """Model set induced by a circuit and its output targets."""
    return circuit_models


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator for randomized tests."""
    return np.random.default_rng(2024)
