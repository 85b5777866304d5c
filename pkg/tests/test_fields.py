import itertools
from fractions import Fraction

import numpy as np
import pytest

from ncsymalg.errors import (
    FieldMismatch,
    InvalidAutomorphism,
    InvalidEmbedding,
    ModulusRequired,
    NotAField,
    NotIrreducible,
    UnsupportedBackend,
)
from ncsymalg.fields import (
    BaseField,
    ExtField,
    FieldHom,
    embeddings,
    frobenius,
    galois_group,
    identity,
    is_irreducible,
    make_extension,
    make_tower,
    smallest_irreducible,
)

from oracles import irreducible_by_trial_division, monic_polys, roots_by_enumeration


def test_base_field_rejects_even_and_composite():
    with pytest.raises(ValueError):
        BaseField.prime(2)
    with pytest.raises(ValueError):
        BaseField.prime(9)
    assert BaseField.prime(5)(7) == 2
    assert BaseField.rational()(3) == Fraction(3)


@pytest.mark.parametrize("p,d", [(3, 1), (3, 2), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2)])
def test_rabin_agrees_with_trial_division(p, d):
    F = BaseField.prime(p)
    for f in monic_polys(F, d):
        assert is_irreducible(F, f) == irreducible_by_trial_division(F, f)


def test_smallest_irreducible_values():
    F3 = BaseField.prime(3)
    assert smallest_irreducible(F3, 1) == (0, 1)
    assert smallest_irreducible(F3, 2) == (1, 0, 1)
    # x^4 + x + 2: the first irreducible quartic when read from x^3 downwards
    assert smallest_irreducible(F3, 4) == (2, 1, 0, 0, 1)


def test_smallest_irreducible_is_minimal():
    F = BaseField.prime(3)
    f = smallest_irreducible(F, 3)
    key = lambda g: tuple(reversed(g[:-1]))
    for g in monic_polys(F, 3):
        if key(g) < key(list(f)):
            assert not irreducible_by_trial_division(F, g)


def test_make_extension_errors():
    F = BaseField.prime(3)
    with pytest.raises(NotIrreducible):
        make_extension(F, 2, [2, 0, 1])  # x^2 - 1
    with pytest.raises(ModulusRequired):
        make_extension(BaseField.rational(), 2)


def test_field_arithmetic_and_inverse(F9):
    nonzero = [a for a in F9.elements() if not a.is_zero()]
    assert len(nonzero) == 8
    for a in nonzero:
        assert a * a.inverse() == F9.one()
        assert a ** 8 == F9.one()
    with pytest.raises(ZeroDivisionError):
        F9.zero().inverse()


def test_reducible_modulus_detected_by_inversion():
    F = BaseField.prime(3)
    R = ExtField(F, (2, 0, 1))  # x^2 - 1 = (x - 1)(x + 1)
    with pytest.raises(NotAField):
        R([1, 1]).inverse()


def test_regular_matrix_is_multiplication(F9):
    F = F9.base
    for a, b in itertools.product(F9.elements(), repeat=2):
        assert np.array_equal(F.matmul(F9.regular_matrix(a), F9.coords(b)), F9.coords(a * b))


def test_frobenius_generates_galois_group(F9):
    G = galois_group(F9)
    assert G.order == 2
    assert G.elements[0].is_identity()
    frob = frobenius(F9)
    assert frob.gen_image == F9.gen() ** 3
    assert frob.compose(frob).is_identity()
    assert G.inverse(1) == 1


def test_galois_group_of_degree_four():
    F = BaseField.prime(3)
    K = make_extension(F, 4)
    G = galois_group(K)
    assert G.order == 4
    # cyclic: the Frobenius has order 4
    assert [G.compose(1, b) for b in range(4)] == [1, 2, 3, 0]


def test_embeddings_match_root_enumeration():
    F = BaseField.prime(3)
    for dk, dl in [(1, 4), (2, 4), (2, 2), (1, 2)]:
        K = make_extension(F, dk, label="K")
        L = make_extension(F, dl, label="L")
        found = sorted(h.gen_image.coeffs for h in embeddings(K, L))
        assert found == roots_by_enumeration(K, L)
        assert len(found) == dk


def test_invalid_homomorphisms(F9):
    with pytest.raises(InvalidAutomorphism):
        FieldHom(F9, F9, F9([1, 1]))
    F = F9.base
    L = make_extension(F, 4, label="L")
    with pytest.raises(InvalidEmbedding):
        FieldHom(F9, L, L([0, 1]))


def test_field_mismatch_between_fields(F9):
    F5 = make_extension(BaseField.prime(5), 2)
    with pytest.raises(FieldMismatch):
        F9.one() + F5.one()


def test_rational_tower_cube_root():
    Q = BaseField.rational()
    K = make_extension(Q, 3, [-2, 0, 0, 1])
    x = K.gen()
    assert x ** 3 == K.scalar(2)
    assert (x + 1) * (x + 1).inverse() == K.one()
    E = make_tower(K, [[0, 0, 1], [0, 1], [1]])
    y = E.gen()
    # y^2 + xy + x^2 = 0 forces y^3 = x^3 = 2
    assert y ** 3 == E.scalar(2)
    lam = FieldHom(K, E, y)
    assert lam(x) ** 3 == E.scalar(2)
    assert E.k_degree == 6


def test_rational_galois_from_generators():
    Q = BaseField.rational()
    K = make_extension(Q, 2, [1, 0, 1])  # Q(i)
    G = galois_group(K, [K([0, -1])])
    assert G.order == 2
    assert galois_group(K).order == 1
    with pytest.raises(UnsupportedBackend):
        frobenius(K)


def test_identity_and_matrix(F9):
    assert np.array_equal(identity(F9).matrix(), F9.base.eye(2))
    frob = frobenius(F9)
    m = frob.matrix()
    for a in F9.elements():
        assert np.array_equal(F9.base.matmul(m, F9.coords(a)), F9.coords(frob(a)))
