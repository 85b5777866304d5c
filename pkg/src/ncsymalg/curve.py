"""Vector bundles on the genus-zero curve attached to a Z-algebra.

The line bundles are O(n) for n ∈ Z, with Hom(O(-j), O(-i)) = A_ij.  Two
families of indecomposables are named after the two kinds of line bundle:

    τ^a L    = O(-2a-1)
    τ^a L̄   = O(-2a)

so τ shifts the twist index by -2 and index parity separates the kinds.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import IndexMismatch, UnsupportedFlavor
from .ncsym import ZAlgebra, ZElement

FLAVORS = ((2, 2), (1, 4))


@dataclass(frozen=True)
class BundleRef:
    """The line bundle O(n)."""

    twist_index: int

    def indecomposable(self) -> "IndecomposableRef":
        n = self.twist_index
        if n % 2 == 0:
            return IndecomposableRef("Lbar", -n // 2)
        return IndecomposableRef("L", -(n + 1) // 2)

    @property
    def position(self) -> int:
        """Z-algebra index j with O(n) = O(-j)."""
        return -self.twist_index


@dataclass(frozen=True)
class IndecomposableRef:
    """τ^power applied to L (kind "L") or to L̄ (kind "Lbar")."""

    kind: str
    power: int = 0

    def __post_init__(self):
        if self.kind not in ("L", "Lbar"):
            raise ValueError(f"unknown bundle kind {self.kind!r}")

    def bundle(self) -> BundleRef:
        if self.kind == "L":
            return BundleRef(-2 * self.power - 1)
        return BundleRef(-2 * self.power)

    @property
    def position(self) -> int:
        return self.bundle().position

    def __str__(self):
        name = "L" if self.kind == "L" else "L̄"
        return name if self.power == 0 else f"τ^{self.power}{name}"


L = IndecomposableRef("L")
LBAR = IndecomposableRef("Lbar")


def ar_translate(F: IndecomposableRef, steps: int = 1) -> IndecomposableRef:
    return IndecomposableRef(F.kind, F.power + steps)


def _require_flavor(Z: ZAlgebra):
    if Z.N.dims not in FLAVORS:
        raise UnsupportedFlavor(f"curve features need a (2,2) or (1,4) bimodule, got {Z.N.dims}")


def hom_dim(Z: ZAlgebra, F: IndecomposableRef, G: IndecomposableRef) -> int:
    """Right dimension of Hom(F, G) = A_ij with F = O(-j), G = O(-i)."""
    _require_flavor(Z)
    i, j = G.position, F.position
    return Z.right_dim(i, j)


def hom_basis(Z: ZAlgebra, F: IndecomposableRef, G: IndecomposableRef) -> list:
    return Z.basis(G.position, F.position)


def identity_map(Z: ZAlgebra, F: IndecomposableRef) -> ZElement:
    return Z.unit(F.position)


def compose(Z: ZAlgebra, f: ZElement, g: ZElement) -> ZElement:
    """f ∘ g for g: F -> G and f: G -> H."""
    if f.j != g.i:
        raise IndexMismatch(f"maps do not chain: target of g is O({-g.i}), source of f is O({-f.j})")
    return Z.multiply(f, g)


def ar_multiplicity(Z: ZAlgebra, F: IndecomposableRef) -> tuple[IndecomposableRef, int]:
    """Middle term of the AR sequence starting at F and its multiplicity.

    The multiplicity is the right dimension of the irreducible-map space
    A_{n,n+1} with n the twist index of F.
    """
    _require_flavor(Z)
    n = F.bundle().twist_index
    mult = Z.right_dim(n, n + 1)
    if F.kind == "L":
        return IndecomposableRef("Lbar", F.power), mult
    return IndecomposableRef("L", F.power - 1), mult


# (name, source, target as functions of i, expected per flavor)
HOM_DIM_ROWS = (
    ("L -> τ^-i L", lambda i: L, lambda i: IndecomposableRef("L", -i),
     {(2, 2): lambda i: 2 * i + 1, (1, 4): lambda i: 2 * i + 1}),
    ("L̄ -> τ^-i L", lambda i: LBAR, lambda i: IndecomposableRef("L", -i),
     {(2, 2): lambda i: 2 * i, (1, 4): lambda i: i}),
    ("L̄ -> τ^-i L̄", lambda i: LBAR, lambda i: IndecomposableRef("Lbar", -i),
     {(2, 2): lambda i: 2 * i + 1, (1, 4): lambda i: 2 * i + 1}),
    ("L -> τ^-i L̄", lambda i: L, lambda i: IndecomposableRef("Lbar", -i),
     {(2, 2): lambda i: 2 * i + 2, (1, 4): lambda i: 4 * i + 4}),
)

AR_TABLE = {(2, 2): {"L": 2, "Lbar": 2}, (1, 4): {"L": 1, "Lbar": 4}}


@dataclass(frozen=True)
class AuditRow:
    row: str
    i: int
    expected: int
    computed: int

    @property
    def ok(self) -> bool:
        return self.expected == self.computed


def dimform_audit(Z: ZAlgebra, max_i: int, min_i: int = -2) -> list[AuditRow]:
    """Hom dimensions between indecomposables for min_i <= i <= max_i.

    Rows with i < 0 must vanish.
    """
    _require_flavor(Z)
    flavor = Z.N.dims
    out = []
    for name, src, dst, expected in HOM_DIM_ROWS:
        for i in range(min_i, max_i + 1):
            want = expected[flavor](i) if i >= 0 else 0
            out.append(AuditRow(name, i, want, hom_dim(Z, src(i), dst(i))))
    return out


def ar_audit(Z: ZAlgebra, powers=range(-1, 2)) -> list[AuditRow]:
    _require_flavor(Z)
    table = AR_TABLE[Z.N.dims]
    out = []
    for a in powers:
        for kind in ("L", "Lbar"):
            F = IndecomposableRef(kind, a)
            middle, mult = ar_multiplicity(Z, F)
            out.append(AuditRow(f"AR({F}) middle {middle}", a, table[kind], mult))
    return out

