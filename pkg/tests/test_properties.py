"""Seeded property checks; runnable on their own with ``pytest tests/test_properties.py``."""
import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncsymalg.bimodule import change_basis, direct_sum, field_as_bimodule, left_dual, right_dual, tensor, twist_bimodule
from ncsymalg.fields import BaseField, embeddings, galois_group, make_extension
from ncsymalg.linalg import Subspace, rank
from ncsymalg.ncsym import ZAlgebra

F3 = BaseField.prime(3)
K9 = make_extension(F3, 2, label="K")
K27 = make_extension(F3, 3, label="K")
SETTINGS = settings(max_examples=30, derandomize=True, deadline=None)


def random_invertible(F, n, rng):
    while True:
        P = F.array(rng.integers(0, F.p, (n, n)))
        if rank(F, P) == n:
            return P


@st.composite
def kk_bimodules(draw):
    """Sums of twists of F_9 or F_27 in a random basis."""
    K = draw(st.sampled_from([K9, K27]))
    G = galois_group(K)
    parts = draw(st.lists(st.integers(0, G.order - 1), min_size=1, max_size=3))
    M = twist_bimodule(K, G.elements[parts[0]])
    for g in parts[1:]:
        M = direct_sum(M, twist_bimodule(K, G.elements[g]))
    seed = draw(st.integers(0, 2 ** 32 - 1))
    return change_basis(M, random_invertible(K.base, M.dim, np.random.default_rng(seed)))


def commute(M):
    F = M.base
    return np.array_equal(F.matmul(M.left_gen, M.right_gen), F.matmul(M.right_gen, M.left_gen))


@SETTINGS
@given(kk_bimodules(), kk_bimodules())
def test_actions_commute_after_constructions(A, B):
    assert commute(A) and commute(right_dual(A)) and commute(left_dual(A))
    if A.right_field == B.left_field:
        assert commute(tensor(A, B))


@SETTINGS
@given(kk_bimodules(), kk_bimodules())
def test_tensor_dimension_law(A, B):
    if A.right_field != B.left_field:
        return
    T = tensor(A, B)
    assert T.dim * A.right_field.degree == A.dim * B.dim
    m, _ = A.dims
    _, n = B.dims
    assert T.dims == (m * B.dims[0], A.dims[1] * n)


@SETTINGS
@given(kk_bimodules())
def test_dual_bookkeeping(M):
    m, n = M.dims
    for D in (right_dual(M), left_dual(M)):
        assert D.dims == (n, m)
        assert (D.left_field, D.right_field) == (M.right_field, M.left_field)
        assert D.dual_data.source is M


@SETTINGS
@given(st.lists(st.lists(st.integers(0, 4), min_size=5, max_size=5), min_size=1, max_size=6), st.integers(0, 10 ** 6))
def test_subspace_canonical_form(rows, seed):
    F = BaseField.prime(5)
    m = F.array(rows)
    rng = np.random.default_rng(seed)
    mixed = F.matmul(random_invertible(F, m.shape[0], rng), m)
    a, b = Subspace.span(F, m, 5), Subspace.span(F, mixed, 5)
    assert np.array_equal(a.basis, b.basis)


@pytest.fixture(scope="module")
def algebras():
    gal = galois_group(K9)
    split = direct_sum(twist_bimodule(K9, gal.elements[0]), twist_bimodule(K9, gal.elements[1]))
    K81 = make_extension(F3, 4, label="K")
    L3 = make_extension(F3, 1, label="L")
    onefour = field_as_bimodule(K81, L3, embeddings(L3, K81)[0])
    return [ZAlgebra(split), ZAlgebra(onefour)]


def test_multiplication_associative(algebras):
    """μ(μ(x, y), z) = μ(x, μ(y, z)) on 120 random triples per algebra."""
    rng = np.random.default_rng(2024)
    shapes = [t for t in itertools.product(range(0, 4), repeat=4) if t[0] <= t[1] <= t[2] <= t[3]]
    for Z in algebras:
        F = Z.base
        for n in range(120):
            i, j, l, m = shapes[n % len(shapes)]
            x, y, z = (
                Z.element(a, b, F.array(rng.integers(0, F.p, Z.component(a, b).dim_k)))
                for a, b in ((i, j), (j, l), (l, m))
            )
            assert np.array_equal(((x * y) * z).coords, (x * (y * z)).coords)
