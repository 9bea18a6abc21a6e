"""Exact coefficient fields: Q, Q(i) and the cyclotomic fields Q(zeta_m).

Rationals are plain :class:`fractions.Fraction`.  Gaussian rationals cover
polynomials written in the complex coordinates ``z, zb``; cyclotomic numbers
are only needed when a rotation by ``2*pi/k`` multiplies a coefficient by a
root of unity that does not lie in Q(i).
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational

Scalar = "Fraction | GaussianRational | CyclotomicNumber"


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    raise TypeError(f"not a rational number: {value!r}")


class GaussianRational:
    """``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = as_fraction(re)
        self.im = as_fraction(im)

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        return cls(as_fraction(value), 0)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __add__(self, other):
        if isinstance(other, CyclotomicNumber):
            return NotImplemented
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, CyclotomicNumber):
            return NotImplemented
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussianRational.coerce(other)
        norm = other.re * other.re + other.im * other.im
        if norm == 0:
            raise ZeroDivisionError("division by zero")
        return self * GaussianRational(other.re / norm, -other.im / norm)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, CyclotomicNumber):
            return NotImplemented
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        sign = "-" if self.im < 0 else "+"
        return f"({self.re} {sign} {abs(self.im)}*i)"


def _int_poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # exact division of integer polynomials (coefficient lists, low degree first)
    # where den is monic
    num = list(num)
    quot = [0] * max(len(num) - len(den) + 1, 1)
    for shift in range(len(num) - len(den), -1, -1):
        c = num[shift + len(den) - 1]
        quot[shift] = c
        if c:
            for i, d in enumerate(den):
                num[shift + i] -= c * d
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return quot, num


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients of the m-th cyclotomic polynomial, lowest degree first."""
    if m < 1:
        raise ValueError("cyclotomic order must be positive")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly, rem = _int_poly_divmod(poly, list(cyclotomic_polynomial(d)))
            assert not any(rem)
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class CyclotomicNumber:
    """Element of Q(zeta_m), stored as a reduced polynomial in zeta.

    ``coeffs[j]`` is the coefficient of ``zeta**j`` for ``j < phi(m)``.
    """

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs=()):
        modulus = cyclotomic_polynomial(m)
        deg = len(modulus) - 1
        work = [as_fraction(c) for c in coeffs]
        for top in range(len(work) - 1, deg - 1, -1):
            c = work[top]
            if c:
                for i, d in enumerate(modulus[:-1]):
                    work[top - deg + i] -= c * d
            work[top] = Fraction(0)
        work = work[:deg] + [Fraction(0)] * (deg - len(work))
        self.m = m
        self.coeffs = tuple(work)

    @classmethod
    def root_of_unity(cls, m: int, power: int) -> "CyclotomicNumber":
        power %= m
        return cls(m, [0] * power + [1])

    @classmethod
    def coerce(cls, value, m: int) -> "CyclotomicNumber":
        if isinstance(value, CyclotomicNumber):
            if value.m == m:
                return value
            if m % value.m:
                raise ValueError(f"Q(zeta_{value.m}) does not embed in Q(zeta_{m})")
            step = m // value.m
            lifted = [Fraction(0)] * (step * (len(value.coeffs) - 1) + 1)
            for j, c in enumerate(value.coeffs):
                lifted[j * step] = c
            return cls(m, lifted)
        if isinstance(value, GaussianRational):
            if value.im == 0:
                return cls(m, [value.re])
            if m % 4:
                raise ValueError(f"i is not in Q(zeta_{m})")
            i_power = m // 4
            coeffs = [Fraction(0)] * (i_power + 1)
            coeffs[0] = value.re
            coeffs[i_power] = value.im
            return cls(m, coeffs)
        return cls(m, [as_fraction(value)])

    def _common(self, other):
        if isinstance(other, CyclotomicNumber):
            m = _lcm(self.m, other.m)
        elif isinstance(other, GaussianRational) and other.im != 0:
            m = _lcm(self.m, 4)
        else:
            m = self.m
        return CyclotomicNumber.coerce(self, m), CyclotomicNumber.coerce(other, m)

    def conjugate(self) -> "CyclotomicNumber":
        # zeta -> zeta^{-1} = zeta^{m-1}
        out = [Fraction(0)] * self.m
        for j, c in enumerate(self.coeffs):
            out[(-j) % self.m] += c
        return CyclotomicNumber(self.m, out)

    def to_gaussian(self) -> GaussianRational | None:
        """The same number as a Gaussian rational, or None if it is not in Q(i)."""
        m = _lcm(self.m, 4)
        lifted = CyclotomicNumber.coerce(self, m)
        # both 1 and i = zeta^(m/4) reduce to themselves, so a Gaussian
        # rational is recognisable from its reduced coordinates
        im = lifted.coeffs[m // 4] if m // 4 < len(lifted.coeffs) else Fraction(0)
        candidate = GaussianRational(lifted.coeffs[0], im)
        if CyclotomicNumber.coerce(candidate, m).coeffs == lifted.coeffs:
            return candidate
        return None

    def __add__(self, other):
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        return CyclotomicNumber(a.m, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.m, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        prod = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        return CyclotomicNumber(a.m, prod)

    __rmul__ = __mul__

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        try:
            a, b = self._common(other)
        except (TypeError, ValueError):
            return NotImplemented
        return a.coeffs == b.coeffs

    def __hash__(self):
        g = self.to_gaussian()
        if g is not None:
            return hash(g)
        return hash((self.m, self.coeffs))

    def __repr__(self):
        return f"CyclotomicNumber({self.m}, {list(map(str, self.coeffs))})"

    def __str__(self):
        parts = []
        for j, c in enumerate(self.coeffs):
            if c:
                parts.append(str(c) if j == 0 else f"{c}*zeta{self.m}^{j}")
        return "(" + " + ".join(parts) + ")" if parts else "0"
