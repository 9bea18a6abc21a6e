"""Finite subgroups of O(2), their polynomial invariants and quotient models.

Groups are handled through normal forms ``rho^a * c^b`` where ``rho`` is the
rotation by ``2*pi/k`` and ``c`` is complex conjugation (the reflection in the
real axis).  Polynomials in the complex coordinates ``z, zb`` are acted on by
substitution; a rotation multiplies ``z^p zb^q`` by ``zeta^(a*(p-q))``, kept
exact in a cyclotomic field whenever the phase is not a power of ``i``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd

from .fields import CyclotomicNumber, GaussianRational
from .poly import Poly, Ring
from .strata import StratifiedModel, Stratum

COMPLEX = Ring(("z", "zb"), "QQ(i)")
PLANE = Ring(("x", "y"))

KINDS = ("trivial", "cyclic", "dihedral")


@dataclass(frozen=True)
class IsotropyGroupKind:
    kind: str
    k: int = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown group kind {self.kind!r}")
        if self.k < 1:
            raise ValueError(f"k must be at least 1, got {self.k}")
        if self.kind == "trivial" and self.k != 1:
            raise ValueError("the trivial group takes no k")

    @classmethod
    def trivial(cls) -> "IsotropyGroupKind":
        return cls("trivial")

    @classmethod
    def cyclic(cls, k: int) -> "IsotropyGroupKind":
        return cls("cyclic", k)

    @classmethod
    def dihedral(cls, k: int) -> "IsotropyGroupKind":
        return cls("dihedral", k)

    def order(self) -> int:
        return {"trivial": 1, "cyclic": self.k, "dihedral": 2 * self.k}[self.kind]

    @property
    def rotation_order(self) -> int:
        return 1 if self.kind == "trivial" else self.k

    def elements(self) -> list["GroupElement"]:
        n = self.rotation_order
        flips = (0, 1) if self.kind == "dihedral" else (0,)
        return [GroupElement(a, b, n) for b in flips for a in range(n)]

    def generators(self) -> list["GroupElement"]:
        if self.kind == "trivial":
            return []
        gens = [GroupElement(1 % self.k, 0, self.k)]
        if self.kind == "dihedral":
            gens.append(GroupElement(0, 1, self.k))
        return gens

    def identity(self) -> "GroupElement":
        return GroupElement(0, 0, self.rotation_order)

    def __str__(self):
        return "trivial" if self.kind == "trivial" else f"{self.kind} k={self.k}"

    def symbol(self) -> str:
        return {"trivial": "1", "cyclic": f"Z_{self.k}", "dihedral": f"D_{self.k}"}[self.kind]


def make_group(kind: str, k: int = 1) -> IsotropyGroupKind:
    if kind == "trivial":
        return IsotropyGroupKind.trivial()
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    return IsotropyGroupKind(kind, k)


@dataclass(frozen=True)
class GroupElement:
    """``rho^a * c^b`` in the dihedral group of rotation order ``k``."""

    a: int
    b: int
    k: int

    def __post_init__(self):
        if self.k < 1 or self.b not in (0, 1):
            raise ValueError(f"bad normal form {self}")
        object.__setattr__(self, "a", self.a % self.k)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if other.k != self.k:
            raise ValueError("elements of different groups")
        # c rho = rho^{-1} c
        sign = -1 if self.b else 1
        return GroupElement(self.a + sign * other.a, (self.b + other.b) % 2, self.k)

    def inverse(self) -> "GroupElement":
        if self.b:
            return self
        return GroupElement(-self.a, 0, self.k)

    def is_identity(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_reflection(self) -> bool:
        return self.b == 1

    def order(self) -> int:
        if self.b:
            return 2
        return self.k // gcd(self.a, self.k)

    def __pow__(self, e: int) -> "GroupElement":
        result = GroupElement(0, 0, self.k)
        base = self if e >= 0 else self.inverse()
        for _ in range(abs(e)):
            result = result * base
        return result


def to_complex(p: Poly) -> Poly:
    """Rewrite a polynomial in two real variables via x = (z+zb)/2, y = (z-zb)/(2i)."""
    if p.ring.names == COMPLEX.names:
        return p.with_field("QQ(i)") if p.ring.field == "QQ" else p
    if p.ring.arity != 2:
        raise ValueError(f"expected a polynomial in two real variables, got {p.ring.names}")
    z, zb = COMPLEX.gens()
    half = Fraction(1, 2)
    x = (z + zb) * half
    y = (z - zb) * GaussianRational(0, -half)
    out = Poly(COMPLEX)
    for (ex, ey), c in p.items():
        out = out + (x ** ex) * (y ** ey) * GaussianRational.coerce(c)
    return out


def _phase(power: int, k: int):
    """zeta_k ** power, as a Gaussian rational when possible."""
    power %= k
    if (4 * power) % k == 0:
        return [GaussianRational(1), GaussianRational(0, 1),
                GaussianRational(-1), GaussianRational(0, -1)][4 * power // k]
    return CyclotomicNumber.root_of_unity(k, power)


def _narrow(p: Poly) -> Poly:
    if p.ring.field != "cyclotomic":
        return p
    out = {}
    for mono, c in p.items():
        g = c.to_gaussian() if isinstance(c, CyclotomicNumber) else GaussianRational.coerce(c)
        if g is None:
            return p
        out[mono] = g
    return Poly(COMPLEX, out)


def act_on_poly(g: GroupElement, p: Poly) -> Poly:
    """Pull ``p`` back along ``g``: the polynomial ``p(g . z)``.

    ``g . z = zeta^a * z`` for rotations and ``zeta^a * zb`` when ``b = 1``;
    the reflection swaps the exponents of ``z`` and ``zb`` and leaves the
    coefficients alone.
    """
    p = to_complex(p)
    out = {}
    cyclotomic = False
    for (ez, ezb), c in p.items():
        phase = _phase(g.a * (ez - ezb), g.k)
        if isinstance(phase, CyclotomicNumber):
            cyclotomic = True
        mono = (ezb, ez) if g.b else (ez, ezb)
        out[mono] = phase * c
    if cyclotomic:
        return _narrow(Poly(Ring(COMPLEX.names, "cyclotomic"), out))
    return Poly(COMPLEX, out)


def is_invariant(p: Poly, group: IsotropyGroupKind) -> bool:
    target = to_complex(p)
    return all(act_on_poly(g, target) == target for g in group.generators())


def rotation_invariant_monomial(ez: int, ezb: int, k: int) -> bool:
    """``z^ez zb^ezb`` is fixed by the rotations of order k iff ez = ezb mod k."""
    return (ez - ezb) % k == 0


def _re_im_power(k: int) -> tuple[Poly, Poly]:
    """Re and Im of (x + iy)^k by the binomial theorem."""
    re, im = {}, {}
    for j in range(k + 1):
        c = comb(k, j)
        # i^j = 1, i, -1, -i
        sign = (1, 1, -1, -1)[j % 4]
        (re if j % 2 == 0 else im)[(k - j, j)] = sign * c
    return Poly(PLANE, re), Poly(PLANE, im)


def invariant_generators(group: IsotropyGroupKind) -> list[Poly]:
    """The Hilbert map of ``R^2 -> R^2/group`` as polynomials in (x, y)."""
    x, y = PLANE.gens()
    norm = x ** 2 + y ** 2
    if group.kind == "trivial":
        return [x, y]
    re, im = _re_im_power(group.k)
    if group.kind == "dihedral":
        return [norm, re]
    return [re, im, norm]


hilbert_map = invariant_generators


@dataclass(frozen=True)
class SemialgebraicModel:
    variables: tuple[str, ...]
    equalities: tuple[Poly, ...] = ()
    inequalities: tuple[Poly, ...] = ()
    germ: Poly | None = None

    def __post_init__(self):
        for p in (*self.equalities, *self.inequalities, *((self.germ,) if self.germ else ())):
            if p.ring.names != self.variables:
                raise ValueError(f"{p} is not in variables {self.variables}")

    @property
    def ring(self) -> Ring:
        return Ring(self.variables)


def semialgebraic_model(group: IsotropyGroupKind) -> SemialgebraicModel:
    """Semi-algebraic quotient model with its singular-locus germ.

    Dihedral(k): ``{t^2 <= s^(2k), s >= 0}`` with germ ``t^2 - s^(2k)``.  Here
    ``s`` is the radius ``|z|`` and ``t = Re(z^k)``, so the region is the
    image of ``z -> (|z|, Re z^k)``; ``s^2`` is the invariant ``x^2 + y^2``.
    Cyclic(k >= 2): ``{s^2 + t^2 = u^k, u >= 0}`` with germ
    ``s^2 + t^2 - u^k``, the image of the Hilbert map (Re z^k, Im z^k, |z|^2).
    """
    if group.kind == "dihedral":
        ring = Ring(("s", "t"))
        s, t = ring.gens()
        k = group.k
        return SemialgebraicModel(ring.names, (), (s ** (2 * k) - t ** 2, s), t ** 2 - s ** (2 * k))
    if group.kind == "cyclic" and group.k >= 2:
        ring = Ring(("s", "t", "u"))
        s, t, u = ring.gens()
        f = s ** 2 + t ** 2 - u ** group.k
        return SemialgebraicModel(ring.names, (f,), (u,), f)
    return SemialgebraicModel(PLANE.names)


def model_certificates(group: IsotropyGroupKind) -> dict[str, bool]:
    """Exact polynomial identities tying the Hilbert map to the model.

    Cyclic: ``Re(z^k)^2 + Im(z^k)^2 = (x^2+y^2)^k``.  Dihedral:
    ``(x^2+y^2)^k - Re(z^k)^2 = Im(z^k)^2``, a sum-of-squares witness for
    ``t^2 <= s^(2k)`` with ``s = |z|``.
    """
    if group.kind == "trivial":
        return {}
    x, y = PLANE.gens()
    norm = x ** 2 + y ** 2
    re, im = _re_im_power(group.k)
    k = group.k
    if group.kind == "cyclic":
        return {"cyclic-equality": re ** 2 + im ** 2 == norm ** k}
    return {"dihedral-inequality": norm ** k - re ** 2 == im ** 2}


def stratify(group: IsotropyGroupKind) -> StratifiedModel:
    """Orbit-type stratification of ``R^2/group``, with point orders."""
    if group.kind == "dihedral":
        k = group.k
        return StratifiedModel(
            (
                Stratum("origin", 2, "s = t = 0", group.order()),
                Stratum("mirror+", 1, f"t = s^{k}, s > 0", 2),
                Stratum("mirror-", 1, f"t = -s^{k}, s > 0", 2),
                Stratum("regular", 0, f"t^2 < s^{2 * k}, s > 0", None, True),
            ),
            frozenset({
                ("origin", "mirror+"), ("origin", "mirror-"),
                ("mirror+", "regular"), ("mirror-", "regular"),
            }),
        )
    if group.kind == "cyclic" and group.k >= 2:
        return StratifiedModel(
            (
                Stratum("origin", 2, "s = t = u = 0", group.order()),
                Stratum("regular", 0, f"s^2 + t^2 = u^{group.k}, u > 0", None, True),
            ),
            frozenset({("origin", "regular")}),
        )
    return StratifiedModel((Stratum("regular", 0, "R^2", None, True),))
