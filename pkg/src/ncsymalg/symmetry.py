"""Two-sided Galois twists of K-K bimodules: stabilisers, automorphisms, orbit cases.

With the tensor convention K_a ⊗ K_b ≅ K_{a∘b}, twisting K_σ by the pair
(δ, γ) gives K_{δ^-1 σ γ}, and twisting by (δ2, γ2) then (δ1, γ1) is the
same as twisting once by (δ2 δ1, γ2 γ1).
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .bimodule import Bimodule, decompose, hom_space, is_isomorphic, left_dual, tensor, twist_bimodule
from .errors import BudgetExceeded, ConsistencyError, FieldMismatch, UnsupportedBackend, WrongShape
from .fields import ExtField, FieldHom, galois_group, identity
from .linalg import rank

DEFAULT_BUDGET = 10 ** 6


@dataclass(frozen=True)
class TwistPair:
    delta: FieldHom
    epsilon: FieldHom

    def __str__(self):
        return f"({self.delta.gen_image!r}, {self.epsilon.gen_image!r})"


@dataclass(frozen=True)
class OrbitCase:
    value: str  # "I", "II" or "III"
    witness: TwistPair | None = None


def inverse_automorphism(h: FieldHom) -> FieldHom:
    """h^-1 as the last power of h before the identity."""
    prev, cur = identity(h.source), h
    while not cur.is_identity():
        prev, cur = cur, h.compose(cur)
    return prev


def _require_kk(M: Bimodule) -> ExtField:
    if M.left_field != M.right_field:
        raise FieldMismatch(f"{M.label} is not a K-K bimodule")
    return M.left_field


def _require_prime(M: Bimodule):
    if not M.base.is_prime:
        raise UnsupportedBackend("Galois enumeration needs a finite base field")


def twist_triple(delta: FieldHom, M: Bimodule, epsilon: FieldHom) -> Bimodule:
    """K_{δ^-1} ⊗_K M ⊗_K K_ε."""
    K = _require_kk(M)
    if delta.source != K or epsilon.source != K:
        raise FieldMismatch("twisting automorphisms must act on the field of M")
    return tensor(twist_bimodule(K, inverse_automorphism(delta)), tensor(M, twist_bimodule(K, epsilon)))


def twist_multiset(M: Bimodule) -> Counter:
    """Multiplicity of each K_σ in M, keyed by the position of σ in the Galois group.

    On a finite field K ⊗_k K has one factor per Galois element, so this is
    decompose(M) relabelled by the twist each factor belongs to.
    """
    K = _require_kk(M)
    _require_prime(M)
    G = galois_group(K)
    owner = {}
    for g_idx, g in enumerate(G.elements):
        mv = decompose(twist_bimodule(K, g)).multiplicities
        owner[mv.index(1)] = g_idx
    mults = decompose(M).multiplicities
    return Counter({owner[r]: m for r, m in enumerate(mults) if m})


def stab(M: Bimodule) -> list[TwistPair]:
    """All (δ, γ) with K_{δ^-1} ⊗ M ⊗ K_γ ≅ M, checked to form a subgroup."""
    K = _require_kk(M)
    _require_prime(M)
    G = galois_group(K)
    pairs = [
        (d, e) for d, e in itertools.product(range(G.order), repeat=2)
        if is_isomorphic(twist_triple(G.elements[d], M, G.elements[e]), M)
    ]
    found = set(pairs)
    if (0, 0) not in found:
        raise ConsistencyError("identity pair missing from the stabiliser")
    for (d1, e1), (d2, e2) in itertools.product(pairs, repeat=2):
        if (G.compose(d2, d1), G.compose(e2, e1)) not in found:
            raise ConsistencyError("stabiliser is not closed under composition")
    return [TwistPair(G.elements[d], G.elements[e]) for d, e in pairs]


def predicted_stab(M: Bimodule) -> list[TwistPair]:
    """Pairs (δ, γ) with {δ^-1 σ γ} = {σ} as multisets over the twists K_σ in M."""
    K = _require_kk(M)
    G = galois_group(K)
    parts = twist_multiset(M)
    out = []
    for d, e in itertools.product(range(G.order), repeat=2):
        moved = Counter()
        for s, m in parts.items():
            moved[G.compose(G.compose(G.inverse(d), s), e)] += m
        if moved == parts:
            out.append(TwistPair(G.elements[d], G.elements[e]))
    return out


@dataclass(frozen=True)
class AutOrder:
    brute: int
    formula: int | None
    automorphisms: int
    scalar_maps: int


def _scalar_maps(M: Bimodule) -> set:
    """The matrices m ↦ a·m·b for a, b ∈ K*, as byte strings."""
    K = M.left_field
    F = M.base
    units = [a for a in K.elements() if not a.is_zero()]
    lefts = [M.left_action(a) for a in units]
    rights = [M.right_action(b) for b in units]
    return {F.matmul(x, y).tobytes() for x in lefts for y in rights}


def aut_order(M: Bimodule, budget: int = DEFAULT_BUDGET) -> AutOrder:
    """Order of Aut(M) modulo the maps m ↦ a·m·b, by orbit counting.

    When M ≅ K_σ ⊕ K_ε with σ ≠ ε the order is also computed as
    |K* × K*| / |{(a σ(b), a ε(b))}| and the two routes must agree.
    """
    K = _require_kk(M)
    _require_prime(M)
    F, n = M.base, M.dim
    H = hom_space(M, M)
    total = F.p ** H.dim
    if total > budget:
        raise BudgetExceeded(f"End({M.label}) has {total} elements, budget {budget}")
    basis = [row.reshape(n, n) for row in H.basis]
    autos = {}
    for coeffs in itertools.product(range(F.p), repeat=H.dim):
        T = F.reduce(sum((c * b for c, b in zip(coeffs, basis)), F.zeros((n, n))))
        if rank(F, T) == n:
            autos[T.tobytes()] = T
    scalars = [np.frombuffer(s, dtype=np.int64).reshape(n, n) for s in _scalar_maps(M)]
    seen, orbits = set(), 0
    for key, T in autos.items():
        if key in seen:
            continue
        orbits += 1
        for S in scalars:
            seen.add(F.matmul(S, T).tobytes())
    formula = None
    parts = twist_multiset(M)
    if sorted(parts.values()) == [1, 1]:
        G = galois_group(K)
        s, e = (G.elements[g] for g in sorted(parts))
        units = [a for a in K.elements() if not a.is_zero()]
        image = {(a * s(b), a * e(b)) for a in units for b in units}
        formula = len(units) ** 2 // len(image)
        if formula != orbits:
            raise ConsistencyError(f"orbit count {orbits} differs from the formula value {formula}")
    return AutOrder(orbits, formula, len(autos), len(scalars))


def orbit_case(M: Bimodule) -> OrbitCase:
    """Case I for (1,4); for (2,2) case II iff M ≅ K_σ ⊗ *M ⊗ K_ε for some σ, ε."""
    shape = M.dims
    if shape == (1, 4):
        return OrbitCase("I")
    if shape != (2, 2):
        raise WrongShape(f"orbit cases are defined for (2,2) and (1,4) bimodules, got {shape}")
    K = _require_kk(M)
    _require_prime(M)
    G = galois_group(K)
    D = left_dual(M)
    for s, e in itertools.product(G.elements, repeat=2):
        if is_isomorphic(M, tensor(twist_bimodule(K, s), tensor(D, twist_bimodule(K, e)))):
            return OrbitCase("II", TwistPair(s, e))
    return OrbitCase("III")


def predicted_orbit_case(M: Bimodule) -> str:
    """Orbit case read off from twist multisets, using *K_σ ≅ K_{σ^-1}."""
    shape = M.dims
    if shape == (1, 4):
        return "I"
    if shape != (2, 2):
        raise WrongShape(f"orbit cases are defined for (2,2) and (1,4) bimodules, got {shape}")
    G = galois_group(_require_kk(M))
    parts = twist_multiset(M)
    for s, e in itertools.product(range(G.order), repeat=2):
        moved = Counter()
        for g, m in parts.items():
            moved[G.compose(G.compose(s, G.inverse(g)), e)] += m
        if moved == parts:
            return "II"
    return "III"


def verify_witness(M: Bimodule, case: OrbitCase) -> bool:
    """Re-test a case II witness from scratch."""
    if case.witness is None:
        return case.value != "II"
    K = M.left_field
    s, e = case.witness.delta, case.witness.epsilon
    return is_isomorphic(M, tensor(twist_bimodule(K, s), tensor(left_dual(M), twist_bimodule(K, e))))
