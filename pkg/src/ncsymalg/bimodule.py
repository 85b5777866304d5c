"""k-central K-L bimodules stored as one k-space with two commuting actions.

A :class:`Bimodule` is a k^d together with the matrix of the left action of
K's generator and the matrix of the right action of L's generator.  Since
both fields are commutative, the right action is also written as a matrix
acting on column vectors.

Conventions pinned here (checked by the test suite):

* ``tensor(K_s, K_e)`` is isomorphic to ``K_{s∘e}``, i.e. x ⊗ y ↦ x s(y).
* ``right_dual(K_s)`` and ``left_dual(K_s)`` are both ``K_{s^-1}``.
"""
from __future__ import annotations

import itertools
import random
import threading
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from .errors import FieldMismatch, InvalidAutomorphism, InvalidBimodule, InvalidEmbedding, NotAField, UnsupportedBackend
from .fields import BaseField, ExtField, FieldElem, FieldHom, TowerField
from .linalg import Subspace, inverse, kernel, matpow, poly_of_matrix, rank, solve


@dataclass(frozen=True, eq=False)
class DualData:
    """How a dual bimodule was built: functionals on ``source`` linear over ``field``.

    Coordinates of a functional are its values on ``basis_indices`` (one
    block of ``field.degree`` scalars per basis vector).  ``coords`` maps a
    vector of ``source`` to its stacked ``field``-coordinates in that basis.
    """

    kind: str  # "right" or "left"
    source: "Bimodule"
    field: ExtField
    basis_indices: tuple
    coords: np.ndarray


@dataclass(frozen=True, eq=False)
class TensorData:
    """A ⊗_L B realised as A^m through a left L-basis w_0..w_{m-1} of B.

    The coordinate (t, r) with index ``t * dim A + r`` is e_r ⊗ w_t, and
    ``projection`` maps k-tensor coordinates (index ``r * dim B + a``) onto it.
    """

    left: "Bimodule"
    right: "Bimodule"
    w_indices: tuple  # w_t is the standard vector e_{w_indices[t]}
    projection: np.ndarray

    @cached_property
    def slices(self) -> np.ndarray:
        """slices[a] is the matrix of x ↦ x ⊗ e_a from ``left`` into the tensor."""
        dA, dB = self.left.dim, self.right.dim
        return self.projection.reshape(-1, dA, dB).transpose(2, 0, 1)


@dataclass(frozen=True, eq=False)
class Bimodule:
    left_field: ExtField
    right_field: ExtField
    left_gen: np.ndarray
    right_gen: np.ndarray
    label: str = "N"
    dual_data: DualData | None = field(default=None, repr=False)
    tensor_data: TensorData | None = field(default=None, repr=False)

    def __post_init__(self):
        K, L = self.left_field, self.right_field
        if K.base != L.base:
            raise InvalidBimodule("left and right fields have different base fields")
        F = K.base
        X, Y = F.array(self.left_gen), F.array(self.right_gen)
        object.__setattr__(self, "left_gen", X)
        object.__setattr__(self, "right_gen", Y)
        d = X.shape[0] if X.ndim == 2 else -1
        if X.shape != (d, d) or Y.shape != (d, d):
            raise InvalidBimodule(f"{self.label}: action matrices must be square of equal size")
        if d % K.degree or d % L.degree:
            raise InvalidBimodule(f"{self.label}: dimension {d} not divisible by the field degrees")
        if np.any(poly_of_matrix(F, K.modulus, X) != 0):
            raise InvalidBimodule(f"{self.label}: left action does not satisfy the modulus of {K.label}")
        if np.any(poly_of_matrix(F, L.modulus, Y) != 0):
            raise InvalidBimodule(f"{self.label}: right action does not satisfy the modulus of {L.label}")
        if np.any(F.matmul(X, Y) != F.matmul(Y, X)):
            raise InvalidBimodule(f"{self.label}: left and right actions do not commute")

    @property
    def base(self) -> BaseField:
        return self.left_field.base

    @property
    def dim(self) -> int:
        return self.left_gen.shape[0]

    @property
    def dims(self) -> tuple[int, int]:
        return dims(self)

    @cached_property
    def left_powers(self) -> list:
        return _powers(self.base, self.left_gen, self.left_field.degree)

    @cached_property
    def right_powers(self) -> list:
        return _powers(self.base, self.right_gen, self.right_field.degree)

    def left_action(self, a) -> np.ndarray:
        return _action(self.base, self.left_powers, self.left_field(a))

    def right_action(self, b) -> np.ndarray:
        return _action(self.base, self.right_powers, self.right_field(b))

    def __repr__(self):
        m, n = self.dims
        return f"Bimodule({self.label}: {self.left_field.label}-{self.right_field.label}, dim_k={self.dim}, ({m},{n}))"


def _powers(F: BaseField, g: np.ndarray, count: int) -> list:
    out = [F.eye(g.shape[0])]
    for _ in range(count - 1):
        out.append(F.matmul(g, out[-1]))
    return out


def _action(F: BaseField, powers: list, a: FieldElem) -> np.ndarray:
    n = powers[0].shape[0]
    m = F.zeros((n, n))
    for c, pw in zip(a.coeffs, powers):
        if c:
            m = m + c * pw
    return F.reduce(m)


def _unit(F: BaseField, n: int, i: int) -> np.ndarray:
    v = F.zeros(n)
    v[i] = F(1)
    return v


def _check_same_pair(A: Bimodule, B: Bimodule):
    if A.left_field != B.left_field or A.right_field != B.right_field:
        raise FieldMismatch(
            f"{A.label} is {A.left_field.label}-{A.right_field.label}, "
            f"{B.label} is {B.left_field.label}-{B.right_field.label}"
        )


def dims(N: Bimodule) -> tuple[int, int]:
    """(left dimension over K, right dimension over L)."""
    return N.dim // N.left_field.degree, N.dim // N.right_field.degree


# --- constructors ---------------------------------------------------------


def twist_bimodule(K: ExtField, sigma: FieldHom, label: str | None = None) -> Bimodule:
    """K_σ: underlying set K with a·x·b = a x σ(b)."""
    if sigma.source != K or sigma.target != K:
        raise InvalidAutomorphism(f"{sigma!r} is not an automorphism of {K.label}")
    return Bimodule(K, K, K.companion, K.regular_matrix(sigma.gen_image), label or f"{K.label}_{sigma.gen_image!r}")


def regular_bimodule(K: ExtField) -> Bimodule:
    return Bimodule(K, K, K.companion, K.companion, f"{K.label}_id")


def field_as_bimodule(K: ExtField, L: ExtField, iota: FieldHom, label: str | None = None) -> Bimodule:
    """K viewed as a K-L bimodule, L acting on the right through ``iota``."""
    if iota.source != L or iota.target != K:
        raise InvalidEmbedding(f"{iota!r} is not an embedding {L.label} -> {K.label}")
    return Bimodule(K, L, K.companion, K.regular_matrix(iota.gen_image), label or f"{K.label}|{L.label}")


def simple_from_embedding(K: ExtField, E: TowerField, lam: FieldHom, label: str | None = None) -> Bimodule:
    """V(λ) on the space E: x·v = xv and v·x = vλ(x)."""
    if E.base_field != K:
        raise InvalidEmbedding(f"{E.label} is not presented as an extension of {K.label}")
    if lam.source != K or lam.target != E:
        raise InvalidEmbedding(f"{lam!r} is not an embedding {K.label} -> {E.label}")
    X = E.regular_matrix(E.embed(K.gen()))
    Y = E.regular_matrix(lam.gen_image)
    return Bimodule(K, K, X, Y, label or f"V({lam.gen_image!r})")


def zero_bimodule(K: ExtField, L: ExtField) -> Bimodule:
    F = K.base
    return Bimodule(K, L, F.zeros((0, 0)), F.zeros((0, 0)), "0")


def direct_sum(A: Bimodule, B: Bimodule) -> Bimodule:
    _check_same_pair(A, B)
    F = A.base

    def block(x, y):
        out = F.zeros((x.shape[0] + y.shape[0],) * 2)
        out[: x.shape[0], : x.shape[0]] = x
        out[x.shape[0]:, x.shape[0]:] = y
        return out

    return Bimodule(
        A.left_field, A.right_field, block(A.left_gen, B.left_gen), block(A.right_gen, B.right_gen),
        f"({A.label}+{B.label})",
    )


def change_basis(N: Bimodule, P: np.ndarray) -> Bimodule:
    """The same bimodule with actions conjugated by the invertible matrix P."""
    F = N.base
    Pinv = inverse(F, P)
    return Bimodule(
        N.left_field, N.right_field,
        F.matmul(F.matmul(P, N.left_gen), Pinv), F.matmul(F.matmul(P, N.right_gen), Pinv),
        N.label + "'",
    )


# --- bases over the acting fields -----------------------------------------


def greedy_basis(N: Bimodule, side: str, order=None) -> tuple[tuple, np.ndarray]:
    """Basis of N over the field acting on ``side``, picked from standard vectors.

    Scans e_0, e_1, ... (or ``order``) and keeps every vector outside the
    span of the field-orbits chosen so far.  Returns the chosen indices and
    the matrix whose column ``t*d + s`` is gen^s applied to the t-th choice.
    """
    F = N.base
    powers = N.left_powers if side == "left" else N.right_powers
    fld = N.left_field if side == "left" else N.right_field
    d, n = fld.degree, N.dim
    chosen, cols = [], []
    span = Subspace.zero(F, n)
    for a in order if order is not None else range(n):
        if span.dim == n:
            break
        e = _unit(F, n, a)
        if span.contains(e):
            continue
        orbit = [F.matmul(P, e) for P in powers]
        new = span + Subspace.span(F, np.array(orbit, dtype=object) if not F.is_prime else np.array(orbit), n)
        if new.dim != span.dim + d:
            raise NotAField(f"{fld.label} does not act freely on {N.label}; its modulus is reducible")
        chosen.append(a)
        cols.extend(orbit)
        span = new
    if span.dim != n:
        raise InvalidBimodule(f"scan order does not span {N.label}")
    basis = F.array(np.array(cols, dtype=object).T) if cols else F.zeros((n, 0))
    return tuple(chosen), basis


# --- tensor products ------------------------------------------------------


def tensor(A: Bimodule, B: Bimodule, label: str | None = None) -> Bimodule:
    """A ⊗_L B for an K-L bimodule A and an L-K' bimodule B."""
    if A.right_field != B.left_field:
        raise FieldMismatch(f"cannot tensor {A.label} and {B.label} over different fields")
    F, L = A.base, A.right_field
    d, dA, dB = L.degree, A.dim, B.dim
    idx, Bm = greedy_basis(B, "left")
    m = len(idx)
    C = inverse(F, Bm)  # left L-coordinates of vectors of B
    W = F.zeros((dB, m))
    W[list(idx), list(range(m))] = F(1)
    R = np.stack(A.right_powers)  # (d, dA, dA)
    C3 = C.reshape(m, d, dB)
    P4 = np.tensordot(C3, R, axes=([1], [0]))  # (m, dB, dA, dA) as [t, a, x, r]
    P = F.reduce(P4.transpose(0, 2, 3, 1).reshape(m * dA, dA * dB))
    # left action: K acts on the A factor of every block
    X = F.zeros((m * dA, m * dA))
    for t in range(m):
        X[t * dA:(t + 1) * dA, t * dA:(t + 1) * dA] = A.left_gen
    # right action: e_r ⊗ w_t·z = sum_u e_r·c_u(w_t z) ⊗ w_u
    Cw = F.matmul(C, F.matmul(B.right_gen, W))  # (m*d, m)
    Y = F.zeros((m * dA, m * dA))
    for u in range(m):
        for t in range(m):
            blk = F.zeros((dA, dA))
            for s in range(d):
                c = Cw[u * d + s, t]
                if c:
                    blk = blk + c * A.right_powers[s]
            Y[u * dA:(u + 1) * dA, t * dA:(t + 1) * dA] = F.reduce(blk)
    return Bimodule(
        A.left_field, B.right_field, X, Y, label or f"({A.label}⊗{B.label})",
        tensor_data=TensorData(A, B, idx, P),
    )


def balancing_relations(A: Bimodule, B: Bimodule) -> Subspace:
    """k-span of a·g ⊗ b - a ⊗ g·b inside A ⊗_k B (g the generator of L)."""
    F = A.base
    D = F.reduce(np.kron(A.right_gen, F.eye(B.dim)) - np.kron(F.eye(A.dim), B.left_gen))
    return Subspace.span(F, D.T, A.dim * B.dim)


def tensor_vector(T: Bimodule, x, y) -> np.ndarray:
    """Class of x ⊗ y in T = tensor(A, B)."""
    F = T.base
    return F.matmul(T.tensor_data.projection, F.reduce(np.kron(F.array(x), F.array(y))))


# --- duals ----------------------------------------------------------------


def right_dual(N: Bimodule, order=None) -> Bimodule:
    """N* = Hom_L(N_L, L) with (a·ψ·b)(n) = a ψ(b n)."""
    F, K, L = N.base, N.left_field, N.right_field
    d = L.degree
    idx, Bm = greedy_basis(N, "right", order)
    C = inverse(F, Bm)
    n = len(idx)
    X = F.zeros((n * d, n * d))
    for j in range(n):
        X[j * d:(j + 1) * d, j * d:(j + 1) * d] = L.companion
    # (ψ·x)(b_j) = ψ(x b_j) = sum_t ψ_t c_t(x b_j)
    moved = F.matmul(C, F.matmul(N.left_gen, Bm[:, [t * d for t in range(n)]]))
    Y = F.zeros((n * d, n * d))
    for j in range(n):
        for t in range(n):
            Y[j * d:(j + 1) * d, t * d:(t + 1) * d] = L.regular_matrix(list(moved[t * d:(t + 1) * d, j]))
    return Bimodule(L, K, X, Y, f"{N.label}*", dual_data=DualData("right", N, L, idx, C))


def left_dual(N: Bimodule, order=None) -> Bimodule:
    """*N = Hom_K(_K N, K) with (a·φ·b)(n) = b φ(n a)."""
    F, K, L = N.base, N.left_field, N.right_field
    d = K.degree
    idx, Bm = greedy_basis(N, "left", order)
    C = inverse(F, Bm)
    m = len(idx)
    Y = F.zeros((m * d, m * d))
    for j in range(m):
        Y[j * d:(j + 1) * d, j * d:(j + 1) * d] = K.companion
    # (y·φ)(b_j) = φ(b_j y) = sum_t φ_t c_t(b_j y)
    moved = F.matmul(C, F.matmul(N.right_gen, Bm[:, [t * d for t in range(m)]]))
    X = F.zeros((m * d, m * d))
    for j in range(m):
        for t in range(m):
            X[j * d:(j + 1) * d, t * d:(t + 1) * d] = K.regular_matrix(list(moved[t * d:(t + 1) * d, j]))
    return Bimodule(L, K, X, Y, f"*{N.label}", dual_data=DualData("left", N, K, idx, C))


def evaluate(D: Bimodule, functional, v) -> np.ndarray:
    """Value in ``D.dual_data.field`` of a functional in D at a vector of its source."""
    dd = D.dual_data
    F, fld = D.base, dd.field
    d = fld.degree
    c = F.matmul(dd.coords, F.array(v))
    phi = F.array(functional)
    out = F.zeros(d)
    for t in range(len(dd.basis_indices)):
        out = out + F.matmul(fld.regular_matrix(list(phi[t * d:(t + 1) * d])), c[t * d:(t + 1) * d])
    return F.reduce(out)


class DualChain:
    """Memoised N^{i*}: right duals for i > 0, left duals for i < 0."""

    def __init__(self, N: Bimodule):
        self.N = N
        self._mods = {0: N}
        self._lock = threading.RLock()

    def __getitem__(self, i: int) -> Bimodule:
        with self._lock:
            if i not in self._mods:
                if i > 0:
                    M = right_dual(self[i - 1])
                else:
                    M = left_dual(self[i + 1])
                self._mods[i] = _relabel(M, f"{self.N.label}^{i}*")
            return self._mods[i]


def _relabel(M: Bimodule, label: str) -> Bimodule:
    object.__setattr__(M, "label", label)
    return M


_chain_lock = threading.Lock()


def dual_chain(N: Bimodule) -> DualChain:
    with _chain_lock:
        chain = N.__dict__.get("_dual_chain")
        if chain is None:
            chain = DualChain(N)
            N.__dict__["_dual_chain"] = chain
        return chain


def iterated_dual(N: Bimodule, i: int) -> Bimodule:
    return dual_chain(N)[i]


def pairing_matrix(X: Bimodule, Y: Bimodule, phis) -> np.ndarray:
    """Matrix E with E f = stacked <φ_s, f> for f in Y, where Y is X* or X = *Y."""
    F = X.base
    if Y.dual_data is not None and Y.dual_data.kind == "right" and Y.dual_data.source is X:
        value = lambda phi, f: evaluate(Y, f, phi)
    elif X.dual_data is not None and X.dual_data.kind == "left" and X.dual_data.source is Y:
        value = lambda phi, f: evaluate(X, phi, f)
    else:
        raise ValueError(f"{Y.label} is not paired with {X.label}")
    cols = []
    for c in range(Y.dim):
        e = _unit(F, Y.dim, c)
        cols.append(np.concatenate([value(phi, e) for phi in phis]))
    return F.array(np.array(cols, dtype=object).T)


@dataclass(frozen=True, eq=False)
class DualBasisPair:
    host: Bimodule
    partner: Bimodule
    right_basis: list
    dual_left_basis: list

    def pairing(self) -> np.ndarray:
        """Block matrix of <φ_s, f_t>; the identity when the bases are dual."""
        E = pairing_matrix(self.host, self.partner, self.right_basis)
        F = self.host.base
        return F.matmul(E, F.array(np.array(self.dual_left_basis, dtype=object).T))


def dual_basis_pair(N: Bimodule, i: int, order=None) -> DualBasisPair:
    """A right basis {φ_j} of N^{i*} and the dual left basis {f_j} of N^{(i+1)*}."""
    chain = dual_chain(N)
    X, Y = chain[i], chain[i + 1]
    F, fld = X.base, X.right_field
    d = fld.degree
    idx, Bm = greedy_basis(X, "right", order)
    phis = [Bm[:, t * d] for t in range(len(idx))]
    E = pairing_matrix(X, Y, phis)
    target = F.zeros((len(phis) * d, len(phis)))
    for t in range(len(phis)):
        target[t * d, t] = F(1)
    sol = solve(F, E, target)
    if sol is None:  # pragma: no cover - E is invertible for a genuine basis
        raise ValueError("pairing is degenerate")
    return DualBasisPair(X, Y, phis, [sol[:, t] for t in range(len(phis))])


def canonical_element(pair: DualBasisPair, T: Bimodule) -> np.ndarray:
    """Σ φ_j ⊗ f_j as a vector of T = tensor(N^{i*}, N^{(i+1)*})."""
    F = T.base
    out = F.zeros(T.dim)
    for phi, f in zip(pair.right_basis, pair.dual_left_basis):
        out = out + tensor_vector(T, phi, f)
    return F.reduce(out)


def canonical_relation(N: Bimodule, i: int, T: Bimodule | None = None, order=None):
    """The canonical element and Q_i, its left F_i-span, inside N^{i*} ⊗ N^{(i+1)*}."""
    chain = dual_chain(N)
    if T is None:
        T = tensor(chain[i], chain[i + 1])
    pair = dual_basis_pair(N, i, order)
    elem = canonical_element(pair, T)
    F = T.base
    Q = Subspace.span(F, np.array([F.matmul(P, elem) for P in T.left_powers], dtype=F.dtype), T.dim)
    return elem, Q


# --- decomposition and isomorphism ----------------------------------------


@dataclass(frozen=True)
class MultiplicityVector:
    factor_fields: tuple
    degrees: tuple  # [factor field : k]
    multiplicities: tuple

    def __str__(self):
        return "(" + ", ".join(map(str, self.multiplicities)) + ")"


def _pair_element_matrix(K: ExtField, L: ExtField, e: np.ndarray) -> np.ndarray:
    """Regular representation of e ∈ K ⊗_k L (index a*dL + b for x^a y^b)."""
    F = K.base
    n = K.degree * L.degree
    MX = np.kron(K.companion, F.eye(L.degree))
    MY = np.kron(F.eye(K.degree), L.companion)
    return _eval_pair(F, e.reshape(K.degree, L.degree), _powers(F, MX, K.degree), _powers(F, MY, L.degree), n)


def _eval_pair(F: BaseField, coeffs: np.ndarray, xp: list, yp: list, n: int) -> np.ndarray:
    out = F.zeros((n, n))
    for a in range(coeffs.shape[0]):
        for b in range(coeffs.shape[1]):
            c = coeffs[a, b]
            if c:
                out = out + c * F.matmul(xp[a], yp[b])
    return F.reduce(out)


@lru_cache(maxsize=None)
def pair_idempotents(K: ExtField, L: ExtField) -> tuple:
    """Primitive idempotents of K ⊗_k L over F_p, in a canonical order.

    The Frobenius-fixed subalgebra {e : e^p = e} is F_p^r with the same
    primitive idempotents; it is split with E_c(b) = 1 - (b - c)^(p-1).
    """
    F = K.base
    if not F.is_prime:
        raise UnsupportedBackend("primitive idempotents are computed over F_p only")
    p, n = F.p, K.degree * L.degree
    one = _unit(F, n, 0)

    def mult(e):
        return _pair_element_matrix(K, L, e)

    frob = F.zeros((n, n))
    for i in range(n):
        frob[:, i] = F.matmul(matpow(F, mult(_unit(F, n, i)), p), one)
    fixed = kernel(F, F.reduce(frob - F.eye(n)))
    idems = [one]
    for b in fixed.basis:
        refined = []
        for e in idems:
            for c in range(p):
                shifted = F.reduce(b - c * one)
                proj = F.reduce(one - F.matmul(matpow(F, mult(shifted), p - 1), one))
                f = F.matmul(mult(e), proj)
                if np.any(f != 0) and not any(np.array_equal(f, g) for g in refined):
                    refined.append(f)
        idems = refined
    idems.sort(key=lambda v: tuple(int(x) for x in v))
    return tuple((e, rank(F, mult(e))) for e in idems)


def decompose(N: Bimodule, factor_hints=None) -> MultiplicityVector:
    """Multiplicities of N over the simple factors of K ⊗_k L.

    On F_p the factors come from the primitive idempotents.  Over Q the
    caller supplies ``factor_hints``: polynomials over L (coefficient lists
    of L-elements) whose product is the modulus of K; factor r then has
    multiplicity dim ker g_r(X, Y) / (deg g_r · [L:k]).
    """
    K, L, F = N.left_field, N.right_field, N.base
    if factor_hints is None:
        if not F.is_prime:
            raise UnsupportedBackend("decomposition over Q needs factor hints")
        xp, yp = N.left_powers, N.right_powers
        labels, degs, mults = [], [], []
        for r, (e, deg) in enumerate(pair_idempotents(K, L)):
            act = _eval_pair(F, e.reshape(K.degree, L.degree), xp, yp, N.dim)
            labels.append(f"{K.label}.{L.label}[{r}]")
            degs.append(deg)
            mults.append(rank(F, act) // deg)
        return MultiplicityVector(tuple(labels), tuple(degs), tuple(mults))
    hints = [[L(c) for c in g] for g in factor_hints]
    prod = [L.one()]
    for g in hints:
        out = [L.zero()] * (len(prod) + len(g) - 1)
        for i, a in enumerate(prod):
            for j, b in enumerate(g):
                out[i + j] = out[i + j] + a * b
        prod = out
    if prod != [L.scalar(c) for c in K.modulus]:
        raise ValueError(f"factor hints do not multiply to the modulus of {K.label}")
    labels, degs, mults = [], [], []
    for r, g in enumerate(hints):
        op = F.zeros((N.dim, N.dim))
        Xpow = F.eye(N.dim)
        for c in g:
            op = op + F.matmul(N.right_action(c), Xpow)
            Xpow = F.matmul(N.left_gen, Xpow)
        deg = (len(g) - 1) * L.degree
        ker = N.dim - rank(F, F.reduce(op))
        labels.append(f"{K.label}.{L.label}[{r}]")
        degs.append(deg)
        mults.append(ker // deg)
    return MultiplicityVector(tuple(labels), tuple(degs), tuple(mults))


def hom_space(A: Bimodule, B: Bimodule) -> Subspace:
    """Bimodule maps A -> B as row-major vectors of dim B x dim A matrices."""
    _check_same_pair(A, B)
    F = A.base
    dA, dB = A.dim, B.dim
    eqs = []
    for GA, GB in ((A.left_gen, B.left_gen), (A.right_gen, B.right_gen)):
        eqs.append(F.reduce(np.kron(F.eye(dB), GA.T) - np.kron(GB, F.eye(dA))))
    return kernel(F, np.concatenate(eqs)) if dA * dB else Subspace.zero(F, 0)


def find_isomorphism(A: Bimodule, B: Bimodule, tries: int = 64, seed: int = 0) -> np.ndarray | None:
    """An invertible element of hom_space(A, B), or None.

    Basis elements are tried first, then seeded random combinations; on F_p
    an exhaustive scan follows when the hom space is small.
    """
    _check_same_pair(A, B)
    if A.dim != B.dim:
        return None
    F, n = A.base, A.dim
    if n == 0:
        return F.zeros((0, 0))
    H = hom_space(A, B)
    if H.dim == 0:
        return None
    mats = [row.reshape(n, n) for row in H.basis]
    for M in mats:
        if rank(F, M) == n:
            return M
    rng = random.Random(seed)
    for _ in range(tries):
        coeffs = [rng.randrange(F.p) if F.is_prime else rng.randint(-5, 5) for _ in mats]
        M = F.reduce(sum(c * m for c, m in zip(coeffs, mats)))
        if rank(F, M) == n:
            return M
    if F.is_prime and F.p ** H.dim <= 10 ** 5:
        for coeffs in itertools.product(range(F.p), repeat=H.dim):
            M = F.reduce(sum(c * m for c, m in zip(coeffs, mats)))
            if rank(F, M) == n:
                return M
    return None


def is_isomorphic(A: Bimodule, B: Bimodule, factor_hints=None) -> bool:
    _check_same_pair(A, B)
    if A.dim != B.dim:
        return False
    if A.base.is_prime or factor_hints is not None:
        return decompose(A, factor_hints).multiplicities == decompose(B, factor_hints).multiplicities
    return find_isomorphism(A, B) is not None
