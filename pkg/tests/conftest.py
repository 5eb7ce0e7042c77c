import math

import numpy as np
import pytest

from witness_bounds.linalg import StateVector

ACCEPTANCE_LINES: list[str] = []


def record(criterion: str, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES.append(f"criterion {criterion}: {'PASS' if ok else 'FAIL'}  {detail}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def bell():
    return StateVector(2, 2, np.array([1, 0, 0, 1]) / math.sqrt(2))


@pytest.fixture
def ket00():
    return StateVector(2, 2, np.array([1, 0, 0, 0]))


# Pauli matrices written out independently of the Gell-Mann generator.
PAULI = [
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
]


def pauli_correlations(rho: np.ndarray) -> np.ndarray:
    """Two-qubit correlation matrix <s_i (x) s_j> computed directly."""
    return np.array([[np.trace(rho @ np.kron(a, b)).real for b in PAULI] for a in PAULI])
