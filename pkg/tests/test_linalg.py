import random
from fractions import Fraction

import pytest

from disentangle.errors import InclusionViolation
from disentangle.linalg import (SparseMatrix, image_basis, kernel_basis, rank, rref,
                                span_rank, subquotient_dim)

from conftest import dense_rank, random_sparse


def test_rank_examples():
    assert rank(SparseMatrix.identity(2)) == 2
    assert rank(SparseMatrix.zeros(3, 4)) == 0
    assert rank(SparseMatrix.from_dense([[1, 2], [2, 4]])) == 1


def test_kernel_examples():
    assert kernel_basis(SparseMatrix.identity(3)) == []
    assert len(kernel_basis(SparseMatrix.zeros(2, 3))) == 3
    (v,) = kernel_basis(SparseMatrix.from_dense([[1, 1]]))
    assert v[0] == -v[1] != 0


def test_image_examples():
    basis = image_basis(SparseMatrix.identity(4))
    assert span_rank(basis, 4) == 4
    assert image_basis(SparseMatrix.zeros(3, 2)) == []
    (v,) = image_basis(SparseMatrix.from_dense([[1, 2], [2, 4]]))
    assert v[1] == 2 * v[0] != 0


def test_subquotient_examples():
    assert subquotient_dim(SparseMatrix.zeros(2, 2), SparseMatrix.zeros(2, 2)) == 2
    # two vertices, two edges both running from v0 to v1
    d1 = SparseMatrix.from_dense([[-1, -1], [1, 1]])
    assert subquotient_dim(d1, SparseMatrix.zeros(2, 0)) == 1
    assert subquotient_dim(SparseMatrix.identity(3), SparseMatrix.zeros(3, 3)) == 0


def test_subquotient_rejects_non_inclusion():
    with pytest.raises(InclusionViolation):
        subquotient_dim(SparseMatrix.identity(2), SparseMatrix.identity(2))


def test_rank_nullity_against_dense_oracle():
    rng = random.Random(7)
    for _ in range(100):
        m = random_sparse(rng)
        r = rank(m)
        assert r == dense_rank(m.to_dense())
        assert r + len(kernel_basis(m)) == m.shape[1]
        assert r == rank(m.T) == len(image_basis(m))
        for v in kernel_basis(m):
            assert all(x == 0 for x in m.apply(v))


def test_subquotient_with_zero_image_is_nullity(rng):
    for _ in range(30):
        m = random_sparse(rng)
        assert subquotient_dim(m, SparseMatrix.zeros(m.shape[1], 0)) == len(kernel_basis(m))


def test_rref_is_normalized(rng):
    for _ in range(30):
        m = random_sparse(rng)
        rows, pivots = rref(m)
        assert pivots == sorted(pivots)
        for row, p in zip(rows, pivots):
            assert row[p] == 1
            for other, q in zip(rows, pivots):
                if other is not row:
                    assert other.get(p, 0) == 0


def test_outputs_are_deterministic(rng):
    m = random_sparse(rng, 8, 0.5)
    assert kernel_basis(m) == kernel_basis(SparseMatrix(*m.shape, dict(reversed(list(m.items())))))


def test_large_integer_entries_stay_exact():
    m = SparseMatrix.from_dense([[10**30, 1], [1, Fraction(1, 10**30)]])
    assert rank(m) == 1


def test_matrix_algebra():
    a = SparseMatrix.from_dense([[1, 2], [0, 1]])
    b = SparseMatrix.from_dense([[0, 1], [1, 0]])
    assert (a @ b).to_dense() == [[2, 1], [1, 0]]
    assert (a - a).is_zero()
    assert (a * 0).nnz == 0
    assert a.T.T == a


def test_float_entries_rejected():
    with pytest.raises(TypeError):
        SparseMatrix.from_dense([[0.5]])
