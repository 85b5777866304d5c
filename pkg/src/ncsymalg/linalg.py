"""Dense exact linear algebra over a :class:`~ncsymalg.fields.BaseField`.

Matrices are numpy arrays: ``int64`` reduced mod p on the prime backend,
``object`` arrays of :class:`fractions.Fraction` on the rational backend.
Vectors are columns; a :class:`Subspace` stores its basis as the rows of a
matrix in reduced row echelon form, so equal subspaces have identical bases.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AmbientMismatch
from .fields import BaseField


def rref(F: BaseField, m) -> tuple[np.ndarray, int, list[int]]:
    """Reduced row echelon form of ``m`` with its rank and pivot columns."""
    a = F.array(m).copy()
    if a.ndim != 2:
        raise ValueError("rref expects a 2-d matrix")
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c] != 0)
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = F.reduce(a[r] * F.inv(a[r, c]))
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col != 0)
        if hit.size:
            a[hit] = F.reduce(a[hit] - np.outer(col[hit], a[r]))
        pivots.append(c)
        r += 1
    return a[:r], r, pivots


def rank(F: BaseField, m) -> int:
    m = F.array(m)
    if m.size == 0:
        return 0
    # eliminate along the shorter side
    if m.shape[0] > m.shape[1]:
        m = m.T
    return rref(F, m)[1]


def kernel(F: BaseField, m) -> "Subspace":
    """Canonical basis of {v : m v = 0}."""
    m = F.array(m)
    cols = m.shape[1]
    if m.shape[0] == 0:
        return Subspace.full(F, cols)
    red, r, pivots = rref(F, m)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = F.zeros((len(free), cols))
    for i, fcol in enumerate(free):
        basis[i, fcol] = F(1)
        for row, pc in enumerate(pivots):
            basis[i, pc] = F(-red[row, fcol])
    return Subspace.span(F, basis, cols)


def solve(F: BaseField, m, rhs) -> np.ndarray | None:
    """One solution x of m x = rhs, or None when the system is inconsistent."""
    m, rhs = F.array(m), F.array(rhs)
    vec = rhs.ndim == 1
    if vec:
        rhs = rhs.reshape(-1, 1)
    rows, cols = m.shape
    if rhs.shape[0] != rows:
        raise ValueError("incompatible shapes")
    aug = np.concatenate([m, rhs], axis=1) if rows else F.zeros((0, cols + rhs.shape[1]))
    red, r, pivots = rref(F, aug)
    if any(p >= cols for p in pivots):
        return None
    x = F.zeros((cols, rhs.shape[1]))
    for row, pc in enumerate(pivots):
        x[pc] = red[row, cols:]
    return x[:, 0] if vec else x


def inverse(F: BaseField, m) -> np.ndarray:
    m = F.array(m)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    x = solve(F, m, F.eye(n))
    if x is None or rank(F, m) < n:
        raise ZeroDivisionError("singular matrix")
    return x


def matpow(F: BaseField, m: np.ndarray, e: int) -> np.ndarray:
    out = F.eye(m.shape[0])
    base = m
    while e:
        if e & 1:
            out = F.matmul(out, base)
        base = F.matmul(base, base)
        e >>= 1
    return out


def poly_of_matrix(F: BaseField, coeffs, m: np.ndarray) -> np.ndarray:
    """Evaluate sum coeffs[t] m^t by Horner's rule."""
    n = m.shape[0]
    acc = F.zeros((n, n))
    for c in reversed(list(coeffs)):
        acc = F.matmul(acc, m)
        if c:
            acc = F.reduce(acc + F(c) * F.eye(n))
    return acc


@dataclass(frozen=True, eq=False)
class Subspace:
    field: BaseField
    ambient_dim: int
    basis: np.ndarray  # rref rows

    @classmethod
    def span(cls, F: BaseField, vectors, ambient_dim: int) -> "Subspace":
        v = F.array(vectors)
        if v.size == 0:
            return cls.zero(F, ambient_dim)
        v = v.reshape(-1, ambient_dim)
        red, _, _ = rref(F, v)
        return cls(F, ambient_dim, red)

    @classmethod
    def zero(cls, F: BaseField, n: int) -> "Subspace":
        return cls(F, n, F.zeros((0, n)))

    @classmethod
    def full(cls, F: BaseField, n: int) -> "Subspace":
        return cls(F, n, F.eye(n))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def pivots(self) -> list[int]:
        return [int(np.flatnonzero(row != 0)[0]) for row in self.basis]

    def _check(self, other: "Subspace"):
        if other.ambient_dim != self.ambient_dim:
            raise AmbientMismatch(f"{self.ambient_dim} vs {other.ambient_dim}")

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.basis.shape == other.basis.shape
            and bool(np.all(self.basis == other.basis))
        )

    __hash__ = None

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.field, np.concatenate([self.basis, other.basis]), self.ambient_dim)

    def intersect(self, other: "Subspace") -> "Subspace":
        """Intersection through the kernel of the stacked system [A^T | -B^T]."""
        self._check(other)
        F = self.field
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(F, self.ambient_dim)
        stacked = np.concatenate([self.basis.T, F.reduce(-other.basis.T)], axis=1)
        ker = kernel(F, stacked)
        coeffs = ker.basis[:, : self.dim]
        return Subspace.span(F, F.matmul(coeffs, self.basis), self.ambient_dim)

    def contains(self, other) -> bool:
        """Membership of a vector, a stack of row vectors, or a subspace."""
        if isinstance(other, Subspace):
            self._check(other)
            vecs = other.basis
        else:
            vecs = self.field.array(other).reshape(-1, self.ambient_dim)
        if vecs.shape[0] == 0:
            return True
        reduced = self.reduce(vecs)
        return not np.any(reduced != 0)

    def reduce(self, vecs) -> np.ndarray:
        """Rows of ``vecs`` with the pivot coordinates eliminated."""
        F = self.field
        v = F.array(vecs).reshape(-1, self.ambient_dim).copy()
        if self.dim:
            piv = self.pivots
            v = F.reduce(v - F.matmul(v[:, piv], self.basis))
        return v

    def quotient(self, sub: "Subspace | None" = None) -> "Quotient":
        """Quotient ``self / sub``: representative basis plus projection."""
        F, n = self.field, self.ambient_dim
        if sub is None:
            sub = Subspace.zero(F, n)
        self._check(sub)
        if self.dim == n:
            # complement = standard vectors at the non-pivot columns of sub
            piv = sub.pivots
            nonpiv = [c for c in range(n) if c not in set(piv)]
            reps = F.zeros((len(nonpiv), n))
            for i, c in enumerate(nonpiv):
                reps[i, c] = F(1)
            proj = F.zeros((len(nonpiv), n))
            for i, c in enumerate(nonpiv):
                proj[i, c] = F(1)
            for r, pc in enumerate(piv):
                proj[:, pc] = F.reduce(-sub.basis[r, nonpiv])
            return Quotient(self, sub, reps, proj)
        if not self.contains(sub):
            raise ValueError("quotient by a subspace that is not contained")
        chosen = []
        span = sub
        for row in self.basis:
            if not span.contains(row):
                chosen.append(row)
                span = span + Subspace.span(F, row, n)
        reps = F.array(np.array(chosen, dtype=object)).reshape(-1, n) if chosen else F.zeros((0, n))
        full = np.concatenate([sub.basis, reps])
        # coordinates of v in the rows of `full`, read off from pivot columns
        red, _, pc = rref(F, np.concatenate([full, F.eye(full.shape[0])], axis=1))
        trans = red[:, n:]  # red[:, :n] = trans @ full
        proj_full = F.zeros((full.shape[0], n))
        proj_full[:, pc] = trans.T
        return Quotient(self, sub, reps, proj_full[sub.dim:])


@dataclass(frozen=True, eq=False)
class Quotient:
    space: Subspace
    sub: Subspace
    representatives: np.ndarray  # rows
    projection: np.ndarray  # dim x ambient

    @property
    def dim(self) -> int:
        return self.representatives.shape[0]

    def project(self, v) -> np.ndarray:
        F = self.space.field
        return F.matmul(self.projection, F.array(v))

    def lift(self, coords) -> np.ndarray:
        F = self.space.field
        return F.matmul(self.representatives.T, F.array(coords))
