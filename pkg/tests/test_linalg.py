from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncsymalg.errors import AmbientMismatch
from ncsymalg.fields import BaseField
from ncsymalg.linalg import Subspace, inverse, kernel, matpow, poly_of_matrix, rank, rref, solve

F5 = BaseField.prime(5)
Q = BaseField.rational()


def matrices(p, max_rows=5, max_cols=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c).map(
                lambda xs: np.array(xs, dtype=np.int64).reshape(r, c)
            )
        )
    )


def test_rref_small_example():
    m = F5.array([[1, 2, 3], [2, 4, 2], [0, 0, 0]])
    red, r, piv = rref(F5, m)
    assert r == 2 and piv == [0, 2]
    assert np.array_equal(red, F5.array([[1, 2, 0], [0, 0, 1]]))


def test_rational_rank_and_inverse():
    m = Q.array([[1, 2], [3, 4]])
    inv = inverse(Q, m)
    assert inv[0, 0] == Fraction(-2) and inv[1, 0] == Fraction(3, 2)
    assert rank(Q, Q.array([[1, 2], [2, 4]])) == 1
    with pytest.raises(ZeroDivisionError):
        inverse(Q, Q.array([[1, 2], [2, 4]]))


@settings(max_examples=60, derandomize=True, deadline=None)
@given(matrices(5))
def test_rank_nullity(m):
    assert rank(F5, m) + kernel(F5, m).dim == m.shape[1]
    K = kernel(F5, m)
    if K.dim:
        assert not np.any(F5.matmul(m, K.basis.T))


@settings(max_examples=60, derandomize=True, deadline=None)
@given(matrices(5), st.integers(0, 10 ** 6))
def test_span_is_canonical(m, seed):
    """Shuffled and rescaled generators give a bit-identical basis."""
    rng = np.random.default_rng(seed)
    perm = rng.permutation(m.shape[0])
    scales = rng.integers(1, 5, size=m.shape[0])
    mixed = F5.reduce(m[perm] * scales[:, None])
    a = Subspace.span(F5, m, m.shape[1])
    b = Subspace.span(F5, mixed, m.shape[1])
    assert a == b
    assert np.array_equal(a.basis, b.basis)


@settings(max_examples=40, derandomize=True, deadline=None)
@given(matrices(5, 4, 5), matrices(5, 4, 5))
def test_intersection_dimension_formula(a, b):
    n = min(a.shape[1], b.shape[1])
    A = Subspace.span(F5, a[:, :n], n)
    B = Subspace.span(F5, b[:, :n], n)
    I = A.intersect(B)
    assert I.dim == A.dim + B.dim - (A + B).dim
    assert A.contains(I) and B.contains(I)


@settings(max_examples=40, derandomize=True, deadline=None)
@given(matrices(5, 5, 5))
def test_quotient_projection(m):
    n = m.shape[1]
    S = Subspace.span(F5, m, n)
    quo = Subspace.full(F5, n).quotient(S)
    assert quo.dim == n - S.dim
    # projection kills the subspace and splits the representatives
    if S.dim:
        assert not np.any(F5.matmul(quo.projection, S.basis.T))
    assert np.array_equal(F5.matmul(quo.projection, quo.representatives.T), F5.eye(quo.dim))


def test_quotient_of_proper_subspace():
    V = Subspace.span(F5, [[1, 0, 0, 0], [0, 1, 1, 0]], 4)
    W = Subspace.span(F5, [[1, 1, 1, 0]], 4)
    quo = V.quotient(W)
    assert quo.dim == 1
    v = F5.array([2, 3, 3, 0])  # = 2*(1,0,0,0) + 3*(0,1,1,0)
    w = F5.array([1, 1, 1, 0])
    assert np.array_equal(quo.project(v), quo.project(F5.reduce(v + 4 * w)))
    with pytest.raises(ValueError):
        V.quotient(Subspace.span(F5, [[0, 0, 0, 1]], 4))


def test_solve_inconsistent_returns_none():
    m = F5.array([[1, 1], [1, 1]])
    assert solve(F5, m, F5.array([1, 2])) is None
    x = solve(F5, m, F5.array([2, 2]))
    assert np.array_equal(F5.matmul(m, x), F5.array([2, 2]))


def test_ambient_mismatch():
    with pytest.raises(AmbientMismatch):
        Subspace.zero(F5, 2) + Subspace.zero(F5, 3)


def test_matrix_polynomials():
    m = F5.array([[0, 4], [1, 0]])  # companion of x^2 + 1
    assert not np.any(poly_of_matrix(F5, [1, 0, 1], m))
    assert np.array_equal(matpow(F5, m, 4), F5.eye(2))
