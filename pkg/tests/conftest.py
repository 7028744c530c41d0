import sys
import random
from fractions import Fraction

import pytest

from disentangle.linalg import SparseMatrix


def dense_rank(rows):
    """Plain Gauss-Jordan on a list of lists; the oracle for the sparse code."""
    m = [[Fraction(v) for v in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                f = m[i][c] / m[rank][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def random_sparse(rng: random.Random, max_dim: int = 9, density: float = 0.3) -> SparseMatrix:
    rows, cols = rng.randint(0, max_dim), rng.randint(0, max_dim)
    entries = {}
    for i in range(rows):
        for j in range(cols):
            if rng.random() < density:
                entries[(i, j)] = Fraction(rng.randint(-4, 4), rng.choice([1, 1, 2, 3]))
    return SparseMatrix(rows, cols, entries)


@pytest.fixture
def rng():
    return random.Random(20261014)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.report_lines():
        terminalreporter.write_line(line)
