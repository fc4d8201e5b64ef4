import numpy as np
import pytest

from spectral_witness.linalg import BipartiteDims
from spectral_witness.schmidt import BipartiteVector


def random_unit_vector(rng, dA, dB):
    v = rng.standard_normal(dA * dB) + 1j * rng.standard_normal(dA * dB)
    return BipartiteVector(BipartiteDims(dA, dB), v / np.linalg.norm(v))


def ket(d_a, d_b, i, j):
    """|ij> with 1-based labels, the way product vectors are usually written."""
    v = np.zeros(d_a * d_b, dtype=complex)
    v[(i - 1) * d_b + (j - 1)] = 1
    return v


FLIP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]],
    dtype=complex,
)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# one line per acceptance criterion, filled by tests/test_acceptance.py
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
