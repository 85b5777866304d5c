"""Exact arithmetic in field towers k ⊂ K (⊂ E).

The base field k is either a prime field F_p (p odd) or the rationals.
Extensions are quotient rings k[x]/(f) for a monic f; a second level
E = K[y]/(g) is available as :class:`TowerField` for building simple
bimodules from embeddings.

Polynomials are coefficient lists ordered from the constant term upwards.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import (
    FieldMismatch,
    InvalidAutomorphism,
    InvalidEmbedding,
    ModulusRequired,
    NotAField,
    NotClosed,
    NotIrreducible,
    UnsupportedBackend,
)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class BaseField:
    """F_p for an odd prime ``p``, or Q when ``p`` is None."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and (not _is_prime(self.p) or self.p == 2):
            raise ValueError(f"base field characteristic must be an odd prime, got {self.p}")

    @classmethod
    def prime(cls, p: int) -> "BaseField":
        return cls(p)

    @classmethod
    def rational(cls) -> "BaseField":
        return cls(None)

    @property
    def is_prime(self) -> bool:
        return self.p is not None

    @property
    def dtype(self):
        return np.int64 if self.is_prime else object

    def __str__(self):
        return f"F_{self.p}" if self.is_prime else "Q"

    def __call__(self, x):
        if self.is_prime:
            return int(x) % self.p
        return Fraction(x)

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.is_prime:
            return pow(int(x), -1, self.p)
        return 1 / Fraction(x)

    def elements(self):
        if not self.is_prime:
            raise UnsupportedBackend("cannot enumerate the rationals")
        return range(self.p)

    # numpy helpers; every matrix in the package goes through these

    def array(self, data) -> np.ndarray:
        if self.is_prime:
            return np.asarray(data, dtype=np.int64) % self.p
        arr = np.array(data, dtype=object)
        if arr.size:
            arr = np.frompyfunc(Fraction, 1, 1)(arr).astype(object)
        return arr

    def zeros(self, shape) -> np.ndarray:
        if self.is_prime:
            return np.zeros(shape, dtype=np.int64)
        return np.full(shape, Fraction(0), dtype=object)

    def eye(self, n: int) -> np.ndarray:
        m = self.zeros((n, n))
        for i in range(n):
            m[i, i] = self(1)
        return m

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        if self.is_prime:
            return arr % self.p
        return arr

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.reduce(a @ b)


# --- polynomials over the base field -------------------------------------


def _trim(f: list) -> list:
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_mul(F: BaseField, f, g) -> list:
    if not f or not g:
        return []
    out = [F(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] = F(out[i + j] + a * b)
    return _trim(out)


def poly_sub(F: BaseField, f, g) -> list:
    n = max(len(f), len(g))
    out = [F((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) for i in range(n)]
    return _trim(out)


def poly_divmod(F: BaseField, f, g) -> tuple[list, list]:
    g = _trim(list(g))
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = _trim([F(c) for c in f])
    q = [F(0)] * max(len(r) - len(g) + 1, 0)
    lead_inv = F.inv(g[-1])
    while len(r) >= len(g):
        shift = len(r) - len(g)
        c = F(r[-1] * lead_inv)
        q[shift] = c
        for i, b in enumerate(g):
            r[i + shift] = F(r[i + shift] - c * b)
        _trim(r)
    return _trim(q), r


def poly_gcd(F: BaseField, f, g) -> list:
    a, b = _trim([F(c) for c in f]), _trim([F(c) for c in g])
    while b:
        a, b = b, poly_divmod(F, a, b)[1]
    if a:
        inv = F.inv(a[-1])
        a = [F(c * inv) for c in a]
    return a


def poly_powmod(F: BaseField, f, e: int, m) -> list:
    result = [F(1)]
    base = poly_divmod(F, f, m)[1]
    while e:
        if e & 1:
            result = poly_divmod(F, poly_mul(F, result, base), m)[1]
        base = poly_divmod(F, poly_mul(F, base, base), m)[1]
        e >>= 1
    return result


def is_irreducible(F: BaseField, f) -> bool:
    """Rabin's irreducibility test for a monic polynomial over F_p."""
    if not F.is_prime:
        raise UnsupportedBackend("irreducibility is only decided over F_p")
    f = _trim([F(c) for c in f])
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    x = [F(0), F(1)]
    for q in _prime_factors(d):
        h = poly_sub(F, poly_powmod(F, x, F.p ** (d // q), f), x)
        if len(poly_gcd(F, f, h)) > 1:
            return False
    return not poly_sub(F, poly_powmod(F, x, F.p ** d, f), x)


def smallest_irreducible(F: BaseField, degree: int) -> tuple:
    """Monic irreducible of the given degree with the smallest base-p value.

    Coefficients are compared from x^(d-1) down to the constant term, so
    x^2 + 1 precedes x^2 + x + 2.
    """
    for top_down in itertools.product(range(F.p), repeat=degree):
        f = [F(c) for c in reversed(top_down)] + [F(1)]
        if is_irreducible(F, f):
            return tuple(f)
    raise NotIrreducible(f"no irreducible polynomial of degree {degree}")  # pragma: no cover


# --- extension fields -----------------------------------------------------


@dataclass(frozen=True)
class ExtField:
    base: BaseField
    modulus: tuple
    label: str = "K"

    def __post_init__(self):
        if len(self.modulus) < 2:
            raise ValueError("modulus must have degree at least 1")
        if self.modulus[-1] != 1:
            raise ValueError("modulus must be monic")

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    @property
    def k_degree(self) -> int:
        return self.degree

    def __repr__(self):
        return f"ExtField({self.label}, {self.base}, modulus=[{', '.join(str(c) for c in self.modulus)}])"

    def __call__(self, coeffs) -> "FieldElem":
        if isinstance(coeffs, FieldElem):
            if coeffs.parent != self:
                raise FieldMismatch("element belongs to another field")
            return coeffs
        if not isinstance(coeffs, (list, tuple, np.ndarray)):
            coeffs = [coeffs]
        return FieldElem(self, tuple(self._reduce([self.base(c) for c in coeffs])))

    def _reduce(self, f: list) -> list:
        F = self.base
        r = [F(c) for c in f]
        d = self.degree
        for top in range(len(r) - 1, d - 1, -1):
            c = r[top]
            if c:
                for i in range(d + 1):
                    r[top - d + i] = F(r[top - d + i] - c * self.modulus[i])
        r = r[:d]
        return r + [F(0)] * (d - len(r))

    def zero(self) -> "FieldElem":
        return self([0])

    def one(self) -> "FieldElem":
        return self([1])

    def gen(self) -> "FieldElem":
        return self([0, 1])

    def scalar(self, c) -> "FieldElem":
        return self([c])

    def elements(self):
        """All field elements in a fixed order (prime backend only)."""
        if not self.base.is_prime:
            raise UnsupportedBackend("cannot enumerate an infinite field")
        for cs in itertools.product(range(self.base.p), repeat=self.degree):
            yield FieldElem(self, tuple(cs))

    @cached_property
    def companion(self) -> np.ndarray:
        """Matrix of multiplication by the generator on the power basis."""
        F, d = self.base, self.degree
        c = F.zeros((d, d))
        for t in range(d - 1):
            c[t + 1, t] = F(1)
        for t in range(d):
            c[t, d - 1] = F(-self.modulus[t])
        return c

    @cached_property
    def _powers(self) -> list:
        F = self.base
        out = [F.eye(self.degree)]
        for _ in range(self.degree - 1):
            out.append(F.matmul(self.companion, out[-1]))
        return out

    def regular_matrix(self, a) -> np.ndarray:
        """k-matrix of multiplication by ``a`` (column convention)."""
        a = self(a)
        F = self.base
        m = F.zeros((self.degree, self.degree))
        for c, pw in zip(a.coeffs, self._powers):
            if c:
                m = m + c * pw
        return F.reduce(m)

    def coords(self, a) -> np.ndarray:
        return self.base.array(list(self(a).coeffs))

    def from_coords(self, v) -> "FieldElem":
        return self(list(v))


@dataclass(frozen=True)
class FieldElem:
    parent: ExtField
    coeffs: tuple

    def _coerce(self, other) -> "FieldElem":
        if isinstance(other, FieldElem):
            if other.parent is not self.parent and other.parent != self.parent:
                raise FieldMismatch(f"{other.parent.label} vs {self.parent.label}")
            return other
        return self.parent.scalar(other)

    def __add__(self, other):
        o = self._coerce(other)
        F = self.parent.base
        return FieldElem(self.parent, tuple(F(a + b) for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        F = self.parent.base
        return FieldElem(self.parent, tuple(F(-a) for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        K = self.parent
        if not isinstance(other, FieldElem):
            F = K.base
            c = F(other)
            return FieldElem(K, tuple(F(a * c) for a in self.coeffs))
        o = self._coerce(other)
        return K(poly_mul(K.base, list(self.coeffs), list(o.coeffs)))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.parent.one(), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "FieldElem":
        K = self.parent
        F = K.base
        if self.is_zero():
            raise ZeroDivisionError("division by zero in " + K.label)
        # extended Euclid on (modulus, self)
        r0, r1 = list(K.modulus), _trim(list(self.coeffs))
        s0, s1 = [], [F(1)]
        while r1:
            q, r = poly_divmod(F, r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, poly_sub(F, s0, poly_mul(F, q, s1))
        if len(r0) != 1:
            raise NotAField(f"{K.label}: element {list(self.coeffs)} shares the factor {r0} with the modulus")
        return K([c * F.inv(r0[0]) for c in s0]) if s0 else K([F.inv(r0[0])])

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"{self.parent.label}[{', '.join(str(c) for c in self.coeffs)}]"


# --- relative extensions E = K[y]/(g) -------------------------------------


@dataclass(frozen=True)
class TowerField:
    base_field: ExtField
    modulus: tuple  # FieldElem of base_field, monic in y
    label: str = "E"

    def __post_init__(self):
        if len(self.modulus) < 2:
            raise ValueError("tower modulus must have degree at least 1")
        if self.modulus[-1] != self.base_field.one():
            raise ValueError("tower modulus must be monic")

    @property
    def base(self) -> BaseField:
        return self.base_field.base

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    @property
    def k_degree(self) -> int:
        return self.degree * self.base_field.degree

    def __call__(self, coeffs) -> "TowerElem":
        if isinstance(coeffs, TowerElem):
            return coeffs
        K = self.base_field
        return TowerElem(self, tuple(self._reduce([K(c) for c in coeffs])))

    def _reduce(self, f: list) -> list:
        K, g, e = self.base_field, self.modulus, self.degree
        r = list(f)
        for top in range(len(r) - 1, e - 1, -1):
            c = r[top]
            if c:
                for i in range(e + 1):
                    r[top - e + i] = r[top - e + i] - c * g[i]
        r = r[:e]
        return r + [K.zero()] * (e - len(r))

    def zero(self):
        return self([])

    def one(self):
        return self([self.base_field.one()])

    def gen(self):
        return self([self.base_field.zero(), self.base_field.one()])

    def scalar(self, c):
        return self([self.base_field.scalar(c)])

    def embed(self, a: FieldElem) -> "TowerElem":
        return self([self.base_field(a)])

    def coords(self, a) -> np.ndarray:
        a = self(a)
        flat = [c for b in a.coeffs for c in b.coeffs]
        return self.base.array(flat)

    def from_coords(self, v) -> "TowerElem":
        d = self.base_field.degree
        v = list(v)
        return self([self.base_field(v[b * d:(b + 1) * d]) for b in range(self.degree)])

    def regular_matrix(self, a) -> np.ndarray:
        a = self(a)
        n = self.k_degree
        cols = []
        for idx in range(n):
            e = [0] * n
            e[idx] = 1
            cols.append(self.coords(a * self.from_coords(e)))
        return self.base.array(np.array(cols, dtype=object).T) if n else self.base.zeros((0, 0))


@dataclass(frozen=True)
class TowerElem:
    parent: TowerField
    coeffs: tuple

    def _coerce(self, other):
        if isinstance(other, TowerElem):
            return other
        if isinstance(other, FieldElem):
            return self.parent.embed(other)
        return self.parent.scalar(other)

    def __add__(self, other):
        o = self._coerce(other)
        return TowerElem(self.parent, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return TowerElem(self.parent, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        o = self._coerce(other)
        K = self.parent.base_field
        out = [K.zero()] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return self.parent(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = self.parent.one()
        for _ in range(e):
            result = result * self
        return result

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        inner = ", ".join("[" + ", ".join(str(x) for x in c.coeffs) + "]" for c in self.coeffs)
        return f"{self.parent.label}[{inner}]"


# --- homomorphisms --------------------------------------------------------


def _evaluate(poly, target, x):
    """Evaluate a polynomial with base-field coefficients at ``x`` by Horner."""
    acc = target.zero()
    for c in reversed(poly):
        acc = acc * x + target.scalar(c)
    return acc


@dataclass(frozen=True)
class FieldHom:
    """k-algebra map determined by the image of the source generator."""

    source: ExtField
    target: ExtField | TowerField
    gen_image: FieldElem | TowerElem

    def __post_init__(self):
        if self.source.base != self.target.base:
            raise FieldMismatch("source and target have different base fields")
        img = self.target(self.gen_image)
        object.__setattr__(self, "gen_image", img)
        if not _evaluate(self.source.modulus, self.target, img).is_zero():
            exc = InvalidAutomorphism if self.source == self.target else InvalidEmbedding
            raise exc(f"{img!r} is not a root of the modulus of {self.source.label}")

    @cached_property
    def _gen_powers(self):
        out = [self.target.one()]
        for _ in range(self.source.degree - 1):
            out.append(out[-1] * self.gen_image)
        return out

    def __call__(self, a):
        a = self.source(a)
        acc = self.target.zero()
        for c, pw in zip(a.coeffs, self._gen_powers):
            if c:
                acc = acc + pw * c
        return acc

    def compose(self, other: "FieldHom") -> "FieldHom":
        """``self ∘ other``: apply ``other`` first."""
        if other.target != self.source:
            raise FieldMismatch("composition of non-composable maps")
        return FieldHom(other.source, self.target, self(other.gen_image))

    def matrix(self) -> np.ndarray:
        F = self.source.base
        cols = [self.target.coords(pw) for pw in self._gen_powers]
        return F.array(np.array(cols, dtype=object).T)

    def is_identity(self) -> bool:
        return self.source == self.target and self.gen_image == self.source.gen()

    def __repr__(self):
        return f"FieldHom({self.source.label}->{self.target.label}: x -> {self.gen_image!r})"


def identity(K: ExtField) -> FieldHom:
    return FieldHom(K, K, K.gen())


@dataclass(frozen=True)
class GaloisGroup:
    field: ExtField
    elements: tuple
    table: tuple  # table[a][b] = index of elements[a] ∘ elements[b]

    @property
    def order(self) -> int:
        return len(self.elements)

    def index(self, h: FieldHom) -> int:
        for i, g in enumerate(self.elements):
            if g.gen_image == h.gen_image:
                return i
        raise KeyError(h)

    def compose(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        for b in range(self.order):
            if self.table[a][b] == 0:
                return b
        raise ValueError("no inverse")  # pragma: no cover

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


def make_extension(base: BaseField, degree: int, modulus=None, label: str = "K") -> ExtField:
    """Build k[x]/(modulus); on F_p the modulus defaults to the smallest irreducible."""
    if degree < 1:
        raise ValueError("degree must be positive")
    if modulus is None:
        if not base.is_prime:
            raise ModulusRequired("the rational backend needs an explicit modulus")
        return ExtField(base, smallest_irreducible(base, degree), label)
    f = tuple(base(c) for c in modulus)
    if len(f) != degree + 1 or f[-1] != 1:
        raise ValueError(f"modulus {list(modulus)} is not monic of degree {degree}")
    if base.is_prime and not is_irreducible(base, f):
        raise NotIrreducible(f"{list(modulus)} is reducible over {base}")
    return ExtField(base, f, label)


def make_tower(K: ExtField, modulus, label: str = "E") -> TowerField:
    """Build K[y]/(modulus); coefficients are elements of K or coefficient lists."""
    return TowerField(K, tuple(K(c) for c in modulus), label)


def frobenius(K: ExtField) -> FieldHom:
    if not K.base.is_prime:
        raise UnsupportedBackend("Frobenius needs a finite base field")
    return FieldHom(K, K, K.gen() ** K.base.p)


def _close(K: ExtField, gens) -> list:
    elems = [identity(K)]
    frontier = list(elems)
    while frontier:
        new = []
        for g in frontier:
            for s in gens:
                h = s.compose(g)
                if all(h.gen_image != e.gen_image for e in elems):
                    elems.append(h)
                    new.append(h)
                    if len(elems) > K.degree:
                        raise NotClosed(f"closure exceeds [{K.label}:k] = {K.degree}")
        frontier = new
    return elems


def galois_group(K: ExtField, user_gens=None) -> GaloisGroup:
    if K.base.is_prime:
        frob = frobenius(K)
        elems = [identity(K)]
        for _ in range(K.degree - 1):
            elems.append(frob.compose(elems[-1]))
    else:
        gens = []
        for g in user_gens or []:
            if not isinstance(g, FieldHom):
                g = FieldHom(K, K, K(g))
            if g.source != K or g.target != K:
                raise InvalidAutomorphism("generator is not an automorphism of " + K.label)
            gens.append(g)
        elems = _close(K, gens)
    images = [e.gen_image for e in elems]
    table = tuple(
        tuple(images.index(a.compose(b).gen_image) for b in elems) for a in elems
    )
    return GaloisGroup(K, tuple(elems), table)


def embeddings(K: ExtField, L: ExtField) -> list:
    """All k-embeddings K -> L, as roots of K's modulus inside L."""
    if not (K.base.is_prime and L.base.is_prime):
        raise UnsupportedBackend("embeddings are enumerated only over F_p")
    if K.base != L.base:
        raise FieldMismatch("different base fields")
    if L.degree % K.degree:
        return []
    root = next(
        (a for a in L.elements() if _evaluate(K.modulus, L, a).is_zero()), None
    )
    if root is None:  # pragma: no cover - finite fields always contain a root
        return []
    roots = [root]
    for _ in range(K.degree - 1):
        nxt = roots[-1] ** K.base.p
        if nxt in roots:
            break
        roots.append(nxt)
    return [FieldHom(K, L, r) for r in roots]
