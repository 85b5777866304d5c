"""The Z-algebra A = T/(R) built from a bimodule and its iterated duals.

Components are T_ii = F_i, T_{i,i+1} = N^{i*} and
T_ij = T_{i,j-1} ⊗ N^{(j-1)*}.  The relations are generated by the
canonical elements Q_i ⊂ T_{i,i+2}:

    R_{i,i+2} = Q_i,
    R_ij = R_{i,j-1} ⊗ N^{(j-1)*} + T_{i,j-2} ⊗ Q_{j-2}    (j > i + 2),

and A_ij = T_ij / R_ij.  Every component is realised as a k-space with
coordinates; products are computed by concatenating tensors and reducing.
"""
from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass

import numpy as np

from .bimodule import Bimodule, canonical_relation, dual_chain, is_isomorphic, regular_bimodule, tensor
from .errors import BudgetExceeded, IndexMismatch, UnsupportedBackend, UnsupportedFlavor
from .fields import ExtField
from .linalg import Quotient, Subspace, rank

DEFAULT_BUDGET = 10 ** 6
DEFAULT_MAX_DIM = 4096


@dataclass(frozen=True, eq=False)
class ZComponent:
    """A_ij as a quotient of T_ij, with its dimensions."""

    i: int
    j: int
    tensor: Bimodule | None  # None for the zero components i > j
    relations: Subspace
    quotient: Quotient
    right_field: ExtField
    left_field: ExtField

    @property
    def dim_k(self) -> int:
        return self.quotient.dim

    @property
    def right_dim(self) -> int:
        return self.dim_k // self.right_field.degree

    @property
    def left_dim(self) -> int:
        return self.dim_k // self.left_field.degree


@dataclass(frozen=True, eq=False)
class ZElement:
    algebra: "ZAlgebra"
    i: int
    j: int
    coords: np.ndarray

    def __mul__(self, other: "ZElement") -> "ZElement":
        return self.algebra.multiply(self, other)

    def is_zero(self) -> bool:
        return not np.any(self.coords != 0)


class ZAlgebra:
    """Lazily built components of the algebra attached to N.

    All caches share one re-entrant lock, so an instance may be used from
    several threads.
    """

    def __init__(self, N: Bimodule, max_dim: int = DEFAULT_MAX_DIM):
        self.N = N
        self.chain = dual_chain(N)
        self.max_dim = max_dim
        self._lock = threading.RLock()
        self._T: dict = {}
        self._R: dict = {}
        self._Q: dict = {}
        self._A: dict = {}
        self._mult: dict = {}

    @property
    def base(self):
        return self.N.base

    def field(self, i: int) -> ExtField:
        return self.chain[i].left_field

    # --- tensor algebra ---------------------------------------------------

    def T(self, i: int, j: int) -> Bimodule:
        if j < i:
            raise IndexMismatch(f"T_{i},{j} is zero; only j >= i is stored")
        with self._lock:
            if (i, j) not in self._T:
                if j == i:
                    M = regular_bimodule(self.field(i))
                elif j == i + 1:
                    M = self.chain[i]
                else:
                    left = self.T(i, j - 1)
                    nxt = self.chain[j - 1]
                    size = left.dim * nxt.dim // nxt.left_field.degree
                    if size > self.max_dim:
                        raise BudgetExceeded(f"T_{i},{j} would have dimension {size} > {self.max_dim}")
                    M = tensor(left, nxt, f"T_{i},{j}")
                self._T[(i, j)] = M
            return self._T[(i, j)]

    def concat_matrix(self, i: int, l: int, j: int, y) -> np.ndarray:
        """Matrix of x ↦ x·y from T_il to T_ij for a fixed y in T_lj."""
        F = self.base
        y = F.array(y)
        T = self.T(i, j)
        if l == i:
            return F.array(np.stack([F.matmul(P, y) for P in T.left_powers], axis=1))
        if l == j:
            return T.right_action(list(y))
        S = T.tensor_data.slices
        if j == l + 1:
            out = F.zeros((T.dim, self.T(i, l).dim))
            for a in np.flatnonzero(y):
                out = out + y[a] * S[a]
            return F.reduce(out)
        # y = sum_t y_t ⊗ w_t with y_t in T_{l,j-1}
        inner = self.T(l, j).tensor_data
        width = self.T(l, j - 1).dim
        out = F.zeros((T.dim, self.T(i, l).dim))
        for t, a in enumerate(inner.w_indices):
            yt = y[t * width:(t + 1) * width]
            if np.any(yt != 0):
                out = out + F.matmul(S[a], self.concat_matrix(i, l, j - 1, yt))
        return F.reduce(out)

    def concat(self, i: int, l: int, j: int, x, y) -> np.ndarray:
        return self.base.matmul(self.concat_matrix(i, l, j, y), self.base.array(x))

    # --- relations --------------------------------------------------------

    def Q(self, i: int) -> Subspace:
        with self._lock:
            if i not in self._Q:
                self._Q[i] = canonical_relation(self.N, i, self.T(i, i + 2))[1]
            return self._Q[i]

    def R(self, i: int, j: int) -> Subspace:
        F = self.base
        with self._lock:
            if (i, j) not in self._R:
                T = self.T(i, j)
                if j <= i + 1:
                    R = Subspace.zero(F, T.dim)
                elif j == i + 2:
                    R = self.Q(i)
                else:
                    R = self.extend_right(i, j - 1, self.R(i, j - 1)) + self.insert_relation(i, j - 2, j)
                self._R[(i, j)] = R
            return self._R[(i, j)]

    def extend_right(self, i: int, j: int, V: Subspace) -> Subspace:
        """V ⊗ N^{j*} inside T_{i,j+1} for a subspace V of T_ij."""
        F = self.base
        T = self.T(i, j + 1)
        if V.dim == 0:
            return Subspace.zero(F, T.dim)
        S = T.tensor_data.slices
        vecs = [F.matmul(S[a], V.basis.T).T for a in range(S.shape[0])]
        return Subspace.span(F, np.concatenate(vecs), T.dim)

    def insert_relation(self, i: int, l: int, j: int, V: Subspace | None = None) -> Subspace:
        """V ⊗ Q_l inside T_ij (j = l + 2); V defaults to all of T_il."""
        F = self.base
        T = self.T(i, j)
        Q = self.Q(l)
        if V is None:
            V = Subspace.full(F, self.T(i, l).dim)
        if V.dim == 0 or Q.dim == 0:
            return Subspace.zero(F, T.dim)
        vecs = [F.matmul(self.concat_matrix(i, l, j, q), V.basis.T).T for q in Q.basis]
        return Subspace.span(F, np.concatenate(vecs), T.dim)

    # --- components and products ------------------------------------------

    def component(self, i: int, j: int) -> ZComponent:
        with self._lock:
            if (i, j) not in self._A and j < i:
                F = self.base
                zero = Subspace.zero(F, 0)
                self._A[(i, j)] = ZComponent(i, j, None, zero, Subspace.full(F, 0).quotient(), self.field(j), self.field(i))
            if (i, j) not in self._A:
                T = self.T(i, j)
                R = self.R(i, j)
                quo = Subspace.full(self.base, T.dim).quotient(R)
                self._A[(i, j)] = ZComponent(i, j, T, R, quo, self.field(j), self.field(i))
            return self._A[(i, j)]

    def element(self, i: int, j: int, coords) -> ZElement:
        c = self.base.array(coords)
        if c.shape != (self.component(i, j).dim_k,):
            raise IndexMismatch(f"A_{i},{j} has dimension {self.component(i, j).dim_k}, got {c.shape}")
        return ZElement(self, i, j, c)

    def basis(self, i: int, j: int) -> list:
        n = self.component(i, j).dim_k
        return [self.element(i, j, np.eye(n, dtype=np.int64)[u]) for u in range(n)]

    def unit(self, i: int) -> ZElement:
        """The local unit e_i, i.e. 1 in A_ii = F_i."""
        F = self.base
        c = F.zeros(self.field(i).degree)
        c[0] = F(1)
        return self.element(i, i, c)

    def multiply(self, a: ZElement, b: ZElement) -> ZElement:
        for x in (a, b):
            if x.coords.shape != (self.component(x.i, x.j).dim_k,):
                raise IndexMismatch(f"coordinates do not match A_{x.i},{x.j}")
        if a.j != b.i or a.i > a.j or b.i > b.j:
            # products along mismatched chains, or through a zero component, vanish
            return ZElement(self, a.i, b.j, self.base.zeros(self.component(a.i, b.j).dim_k))
        M = self.mult_matrix_right(a.i, a.j, b.j, b.coords)
        return ZElement(self, a.i, b.j, self.base.matmul(M, a.coords))

    def mult_matrix_right(self, i: int, l: int, j: int, y) -> np.ndarray:
        """Matrix of x ↦ x·y on A_il for a fixed y in A_lj (quotient coordinates)."""
        F = self.base
        Ail, Alj, Aij = self.component(i, l), self.component(l, j), self.component(i, j)
        lifted_y = Alj.quotient.lift(y)
        C = self.concat_matrix(i, l, j, lifted_y)
        return F.matmul(F.matmul(Aij.quotient.projection, C), Ail.quotient.representatives.T)

    def mult_tensor(self, i: int, l: int, j: int) -> np.ndarray:
        """M[u, v] = coordinates of basis_u(A_il) · basis_v(A_lj)."""
        with self._lock:
            key = (i, l, j)
            if key not in self._mult:
                n = self.component(l, j).dim_k
                F = self.base
                mats = [self.mult_matrix_right(i, l, j, F.array(np.eye(n, dtype=np.int64)[v])) for v in range(n)]
                out = F.zeros((self.component(i, l).dim_k, n, self.component(i, j).dim_k))
                for v, M in enumerate(mats):
                    out[:, v, :] = M.T
                self._mult[key] = out
            return self._mult[key]

    def right_dim(self, i: int, j: int) -> int:
        return self.component(i, j).right_dim if j >= i else 0


# --- predictions ----------------------------------------------------------


def predicted_dim(dims: tuple[int, int], i: int, j: int) -> int:
    """Closed-form right dimension of A_ij for bimodules of type (2,2) or (1,4)."""
    if j < i:
        return 0
    s = j - i
    if tuple(dims) == (2, 2):
        return s + 1
    if tuple(dims) == (1, 4):
        if s % 2 == 0:
            return s + 1
        return (s + 1) // 2 if i % 2 else 2 * s + 2
    raise UnsupportedFlavor(f"no closed form for bimodules of type {tuple(dims)}")


# --- structural checks ----------------------------------------------------


@dataclass(frozen=True)
class DimRow:
    i: int
    j: int
    dim_k: int
    right_dim: int
    predicted: int | None

    @property
    def ok(self) -> bool:
        return self.predicted is None or self.predicted == self.right_dim


def dim_table(Z: ZAlgebra, i_range, max_span: int) -> list[DimRow]:
    out = []
    try:
        shape = Z.N.dims
        predicted_dim(shape, 0, 0)
    except UnsupportedFlavor:
        shape = None
    for i in i_range:
        for s in range(max_span + 1):
            c = Z.component(i, i + s)
            pred = predicted_dim(shape, i, i + s) if shape else None
            out.append(DimRow(i, i + s, c.dim_k, c.right_dim, pred))
    return out


@dataclass(frozen=True)
class ExactnessResult:
    i: int
    j: int
    lhs_dim: int
    rhs_dim: int
    equal: bool


def check_left_exactness(Z: ZAlgebra, i: int, j: int) -> ExactnessResult:
    """Compare (R_ij ⊗ N^{j*}) ∩ (T_{i,j-1} ⊗ Q_{j-1}) with R_{i,j-1} ⊗ Q_{j-1} in T_{i,j+1}."""
    if j < i + 2:
        return ExactnessResult(i, j, 0, 0, True)
    lhs = Z.extend_right(i, j, Z.R(i, j)).intersect(Z.insert_relation(i, j - 1, j + 1))
    rhs = Z.insert_relation(i, j - 1, j + 1, Z.R(i, j - 1))
    return ExactnessResult(i, j, lhs.dim, rhs.dim, lhs == rhs)


@dataclass(frozen=True)
class DomainResult:
    i: int
    j: int
    l: int
    checked: int
    expected_rank: int
    min_rank: int
    ok: bool


def check_domain(Z: ZAlgebra, i: int, j: int, l: int, budget: int = DEFAULT_BUDGET) -> DomainResult:
    """For every nonzero x in A_ij check that y ↦ x·y is injective on A_jl."""
    F = Z.base
    if not F.is_prime:
        raise UnsupportedBackend("exhaustive zero-divisor search needs a finite base field")
    n_x = Z.component(i, j).dim_k
    n_y = Z.component(j, l).dim_k
    count = F.p ** n_x - 1
    if count > budget:
        raise BudgetExceeded(f"A_{i},{j} has {count} nonzero elements, budget {budget}")
    M = Z.mult_tensor(i, j, l)  # (x, y, out)
    min_rank = n_y
    for coeffs in itertools.product(range(F.p), repeat=n_x):
        if not any(coeffs):
            continue
        x = np.asarray(coeffs, dtype=np.int64)
        op = F.reduce(np.tensordot(x, M, axes=([0], [0])))  # (y, out)
        r = rank(F, op)
        min_rank = min(min_rank, r)
        if r < n_y:
            break
    return DomainResult(i, j, l, count, n_y, min_rank, min_rank == n_y)


@dataclass(frozen=True)
class ShiftResult:
    i: int
    j: int
    dim: int
    shifted_dim: int

    @property
    def ok(self) -> bool:
        return self.dim == self.shifted_dim


def check_shift(Z: ZAlgebra, i: int, j: int) -> ShiftResult:
    return ShiftResult(i, j, Z.component(i, j).dim_k, Z.component(i + 2, j + 2).dim_k)


def double_dual_isomorphic(N: Bimodule, factor_hints=None) -> bool:
    return is_isomorphic(N, dual_chain(N)[2], factor_hints)
