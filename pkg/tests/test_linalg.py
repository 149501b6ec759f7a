from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from wncohom.linalg import (DimensionMismatch, SparseMatrix, Subspace, hstack, kernel, kron, rank, rref,
                            subspace_intersect, subspace_sum, vstack)

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def matrices(draw, max_rows=6, max_cols=6, density=0.5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    data = [[draw(small) if draw(st.floats(0, 1)) < density else Fraction(0) for _ in range(c)] for _ in range(r)]
    return SparseMatrix.from_dense(data)


@given(matrices())
def test_rank_agrees_with_sympy(m):
    assert rank(m) == sympy.Matrix(m.to_dense()).rank()


@given(matrices())
def test_rank_nullity(m):
    assert rank(m) + kernel(m).dim == m.ncols


@given(matrices())
def test_kernel_vectors_are_annihilated(m):
    for v in kernel(m).vectors():
        assert not m.apply(v)


@given(matrices())
def test_rref_is_idempotent_and_preserves_rowspace(m):
    r = rref(m)
    assert rref(r) == r
    assert Subspace(m.ncols, m) == Subspace(m.ncols, r)


@given(matrices(), matrices())
def test_sum_and_intersection_dimensions(a, b):
    if a.ncols != b.ncols:
        return
    A, B = Subspace(a.ncols, a), Subspace(b.ncols, b)
    assert subspace_sum(A, B).dim + subspace_intersect(A, B).dim == A.dim + B.dim
    assert subspace_intersect(A, B) <= A


@given(matrices(max_rows=3, max_cols=3), matrices(max_rows=3, max_cols=3))
def test_kron_rank_is_multiplicative(a, b):
    assert rank(kron(a, b)) == rank(a) * rank(b)


def test_product_and_transpose():
    a = SparseMatrix.from_dense([[1, 2], [0, 1]])
    b = SparseMatrix.from_dense([[0, 1], [1, 0]])
    assert (a @ b).to_dense() == [[2, 1], [1, 0]]
    assert a.transpose().to_dense() == [[1, 0], [2, 1]]
    assert vstack([a, b]).shape == (4, 2)
    assert hstack([a, b]).shape == (2, 4)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        SparseMatrix.identity(2) @ SparseMatrix.identity(3)


def test_exact_rationals():
    m = SparseMatrix.from_dense([[Fraction(1, 3), Fraction(1, 6)], [Fraction(2, 3), Fraction(1, 3)]])
    assert rank(m) == 1
    (v,) = kernel(m).vectors()
    assert all(isinstance(c, Fraction) for c in v.values())
