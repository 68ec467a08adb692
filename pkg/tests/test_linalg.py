from fractions import Fraction
from random import Random

import pytest

from kmult.linalg import RatMatrix, kernel_basis, quotient_dim, rank


def test_rank_zero_matrix():
    assert rank(RatMatrix.zero(3, 3)) == 0


def test_rank_identity():
    assert rank(RatMatrix.identity(4)) == 4


def test_rank_proportional_rows():
    m = RatMatrix.from_rows([[1, 2], [2, 4]])
    assert rank(m) == 1


def test_kernel_identity_empty():
    assert kernel_basis(RatMatrix.identity(3)) == []


def test_kernel_one_by_two():
    (v,) = kernel_basis(RatMatrix.from_rows([[1, -1]]))
    assert v[0] == v[1] != 0


def test_kernel_proportional_rows():
    m = RatMatrix.from_rows([[1, 2], [2, 4]])
    (v,) = kernel_basis(m)
    # spans the (2, -1) direction
    assert v[0] * (-1) == v[1] * 2


def test_kernel_vectors_annihilate():
    m = RatMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
    for v in kernel_basis(m):
        col = RatMatrix.from_columns(3, [v])
        assert m.mul(col).is_zero()


def test_quotient_dim_examples():
    assert quotient_dim(3, RatMatrix.zero(3, 2)) == 3
    assert quotient_dim(3, RatMatrix.identity(3)) == 0
    assert quotient_dim(2, RatMatrix.from_columns(2, [[1, 1]])) == 1


def _random_matrix(rng, rows, cols, density=0.5):
    entries = {}
    for i in range(rows):
        for j in range(cols):
            if rng.random() < density:
                entries[(i, j)] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    return RatMatrix(rows, cols, entries)


def test_rank_transpose_invariance():
    rng = Random(11)
    for _ in range(20):
        m = _random_matrix(rng, rng.randint(1, 6), rng.randint(1, 6))
        assert m.rank() == m.transpose().rank()


def test_rank_plus_nullity():
    rng = Random(12)
    for _ in range(20):
        m = _random_matrix(rng, rng.randint(1, 6), rng.randint(1, 6))
        assert m.rank() + len(m.kernel_basis()) == m.cols


def test_rank_invariant_under_permutation_and_scaling():
    rng = Random(13)
    for _ in range(15):
        rows_n = rng.randint(2, 5)
        m = _random_matrix(rng, rows_n, rng.randint(2, 5))
        dense = m.to_dense()
        rng.shuffle(dense)
        i = rng.randrange(rows_n)
        c = Fraction(rng.randint(1, 7), rng.randint(1, 3))
        dense[i] = [c * x for x in dense[i]]
        assert RatMatrix.from_rows(dense).rank() == m.rank()


def test_dense_and_sparse_paths_agree():
    rng = Random(14)
    for density in (0.1, 0.9):
        for _ in range(10):
            m = _random_matrix(rng, 5, 5, density)
            from kmult.linalg import _rank_bareiss, _rank_sparse
            if m.entries:
                assert _rank_bareiss(m) == _rank_sparse(m)


def test_out_of_bounds_entry_rejected():
    with pytest.raises(ValueError):
        RatMatrix(2, 2, {(2, 0): Fraction(1)})
