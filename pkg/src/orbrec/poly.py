"""Sparse multivariate polynomials with exact coefficients.

A :class:`Poly` is a map from exponent tuples to nonzero coefficients inside a
:class:`Ring` that fixes the variable names.  Coefficients are
:class:`~fractions.Fraction` for real polynomials and
:class:`~orbrec.fields.GaussianRational` (or cyclotomic numbers) for
polynomials in the complex coordinates ``z, zb``.

Text format::

    -6 * s^5 + 2 * t
    t^2 - s^6
    3/4 * x^2 y - (x + y)^2

Products may be written with ``*`` or by juxtaposition.  Output is canonical:
terms in descending graded-lex order, integer and ``num/den`` coefficients.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .fields import CyclotomicNumber, GaussianRational, as_fraction

Monomial = tuple[int, ...]

FIELDS = ("QQ", "QQ(i)", "cyclotomic")


@dataclass(frozen=True)
class Ring:
    names: tuple[str, ...]
    field: str = "QQ"

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"repeated variable name in {self.names}")
        if self.field not in FIELDS:
            raise ValueError(f"unknown coefficient field {self.field!r}")

    @property
    def arity(self) -> int:
        return len(self.names)

    def index(self, var: int | str) -> int:
        if isinstance(var, str):
            try:
                return self.names.index(var)
            except ValueError:
                raise ValueError(f"unknown variable {var!r} in ring {self.names}") from None
        if not 0 <= var < self.arity:
            raise ValueError(f"variable index {var} out of range for arity {self.arity}")
        return var

    def gens(self) -> list["Poly"]:
        return [Poly.variable(self, i) for i in range(self.arity)]


def grlex_key(mono: Monomial) -> tuple:
    return (sum(mono), mono)


def _coerce(field: str, value):
    if field == "QQ":
        return as_fraction(value)
    if field == "QQ(i)":
        if isinstance(value, CyclotomicNumber):
            g = value.to_gaussian()
            if g is None:
                raise TypeError(f"{value} is not a Gaussian rational")
            return g
        return GaussianRational.coerce(value)
    if isinstance(value, (CyclotomicNumber, GaussianRational)):
        return value
    return as_fraction(value)


def _wider(a: str, b: str) -> str:
    return a if FIELDS.index(a) >= FIELDS.index(b) else b


def _field_of(value) -> str:
    if isinstance(value, CyclotomicNumber):
        return "cyclotomic"
    if isinstance(value, GaussianRational):
        return "QQ(i)"
    return "QQ"


class Poly:
    """Immutable sparse polynomial; see the module docstring."""

    __slots__ = ("ring", "_terms")

    def __init__(self, ring: Ring, terms: Mapping[Monomial, object] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Monomial, object] = {}
        for mono, coeff in items:
            mono = tuple(int(e) for e in mono)
            if len(mono) != ring.arity:
                raise ValueError(f"monomial {mono} does not match arity {ring.arity}")
            if any(e < 0 for e in mono):
                raise ValueError(f"negative exponent in {mono}")
            coeff = _coerce(ring.field, coeff)
            if mono in clean:
                coeff = clean[mono] + coeff
            clean[mono] = coeff
        self.ring = ring
        self._terms = {m: c for m, c in sorted(clean.items(), key=lambda mc: grlex_key(mc[0]), reverse=True) if c}

    # construction -----------------------------------------------------

    @classmethod
    def constant(cls, ring: Ring, value) -> "Poly":
        return cls(ring, {(0,) * ring.arity: value})

    @classmethod
    def variable(cls, ring: Ring, var: int | str) -> "Poly":
        i = ring.index(var)
        mono = tuple(1 if j == i else 0 for j in range(ring.arity))
        return cls(ring, {mono: 1})

    @classmethod
    def monomial(cls, ring: Ring, mono: Monomial, coeff=1) -> "Poly":
        return cls(ring, {tuple(mono): coeff})

    def with_field(self, field: str) -> "Poly":
        return Poly(Ring(self.ring.names, field), self._terms)

    def rename(self, names: Sequence[str]) -> "Poly":
        """The same terms read in a ring with different (or reordered) names.

        ``names`` must contain every variable that occurs in ``self``.
        """
        ring = Ring(tuple(names), self.ring.field)
        out = {}
        for mono, coeff in self._terms.items():
            new = [0] * ring.arity
            for name, e in zip(self.ring.names, mono):
                if e:
                    new[ring.index(name)] = e
            out[tuple(new)] = coeff
        return Poly(ring, out)

    # container protocol -----------------------------------------------

    @property
    def terms(self) -> dict[Monomial, object]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, object]]:
        return iter(self._terms.items())

    def coefficient(self, mono: Monomial):
        return self._terms.get(tuple(mono), _coerce(self.ring.field, 0))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    def order(self) -> int | None:
        """Lowest total degree of a term (the m-adic order), None for zero."""
        return min((sum(m) for m in self._terms), default=None)

    def constant_term(self):
        return self.coefficient((0,) * self.ring.arity)

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly(self.ring, {m: c for m, c in self._terms.items() if sum(m) == d})

    def truncate(self, n: int) -> "Poly":
        """Drop every term of total degree >= n."""
        return Poly(self.ring, {m: c for m, c in self._terms.items() if sum(m) < n})

    def variables_used(self) -> tuple[str, ...]:
        used = set()
        for mono in self._terms:
            used.update(name for name, e in zip(self.ring.names, mono) if e)
        return tuple(n for n in self.ring.names if n in used)

    # arithmetic -------------------------------------------------------

    def _lift(self, other) -> tuple["Poly", "Poly"]:
        if isinstance(other, Poly):
            if other.ring.names != self.ring.names:
                raise ValueError(f"ring mismatch: {self.ring.names} vs {other.ring.names}")
            field = _wider(self.ring.field, other.ring.field)
            a = self if self.ring.field == field else self.with_field(field)
            b = other if other.ring.field == field else other.with_field(field)
            return a, b
        field = _wider(self.ring.field, _field_of(other))
        a = self if self.ring.field == field else self.with_field(field)
        return a, Poly.constant(a.ring, other)

    def __add__(self, other):
        try:
            a, b = self._lift(other)
        except TypeError:
            return NotImplemented
        out = dict(a._terms)
        for m, c in b._terms.items():
            out[m] = out[m] + c if m in out else c
        return Poly(a.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def mul_truncated(self, other: "Poly", n: int | None = None) -> "Poly":
        """Product, discarding terms of total degree >= n when n is given."""
        a, b = self._lift(other)
        out: dict[Monomial, object] = {}
        for m1, c1 in a._terms.items():
            d1 = sum(m1)
            for m2, c2 in b._terms.items():
                if n is not None and d1 + sum(m2) >= n:
                    continue
                m = tuple(x + y for x, y in zip(m1, m2))
                c = c1 * c2
                out[m] = out[m] + c if m in out else c
        return Poly(a.ring, out)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            try:
                a, _ = self._lift(other)
            except TypeError:
                return NotImplemented
            c = _coerce(a.ring.field, other)
            return Poly(a.ring, {m: v * c for m, v in a._terms.items()})
        return self.mul_truncated(other)

    __rmul__ = __mul__

    def power_truncated(self, e: int, n: int | None = None) -> "Poly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.constant(self.ring, 1)
        base = self if n is None else self.truncate(n)
        while e:
            if e & 1:
                result = result.mul_truncated(base, n)
            e >>= 1
            if e:
                base = base.mul_truncated(base, n)
        return result

    def __pow__(self, e: int):
        return self.power_truncated(e)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring.names == other.ring.names and self._terms == other._terms
        if self.is_zero():
            return other == 0
        if len(self._terms) == 1 and self.degree() == 0:
            return self.constant_term() == other
        return NotImplemented

    def __hash__(self):
        return hash((self.ring.names, frozenset(self._terms.items())))

    def map_coefficients(self, fn) -> "Poly":
        return Poly(self.ring, {m: fn(c) for m, c in self._terms.items()})

    def conjugate(self) -> "Poly":
        """Conjugate coefficients (identity over QQ)."""
        if self.ring.field == "QQ":
            return self
        return self.map_coefficients(lambda c: c.conjugate())

    # calculus and substitution ------------------------------------------

    def differentiate(self, var: int | str) -> "Poly":
        i = self.ring.index(var)
        out = {}
        for m, c in self._terms.items():
            if m[i]:
                new = list(m)
                new[i] -= 1
                out[tuple(new)] = c * m[i]
        return Poly(self.ring, out)

    def linear_part(self) -> list:
        """Coefficients of x_1, ..., x_n."""
        return [self.coefficient(tuple(1 if j == i else 0 for j in range(self.ring.arity)))
                for i in range(self.ring.arity)]

    def __repr__(self):
        return f"Poly({self.ring.names}, {str(self)!r})"

    def __str__(self):
        return format_poly(self)


def differentiate(p: Poly, var: int | str) -> Poly:
    return p.differentiate(var)


def truncate(p: Poly, n: int) -> Poly:
    return p.truncate(n)


def compose_truncate(f: Poly, subst: Mapping[int | str, Poly], n: int | None) -> Poly:
    """Substitute polynomials for the variables of ``f``, keeping degree < n.

    Variables missing from ``subst`` are left in place, so every substituted
    polynomial must live in the same ring as ``f`` unless every variable is
    substituted.  Each substitution must vanish at the origin; the result is
    then the germ of ``f`` pulled back along a map fixing 0.
    """
    images: dict[int, Poly] = {f.ring.index(k): v for k, v in subst.items()}
    target_ring = None
    for v in images.values():
        if target_ring is None:
            target_ring = v.ring
        elif v.ring.names != target_ring.names:
            raise ValueError("substituted polynomials live in different rings")
        if v.constant_term():
            raise ValueError(f"substitution {v} has a nonzero constant term; not a germ at the origin")
    if target_ring is None:
        target_ring = f.ring
    if len(images) < f.ring.arity:
        if target_ring.names != f.ring.names:
            raise ValueError("partial substitution must stay in the ring of f")
        for i in range(f.ring.arity):
            images.setdefault(i, Poly.variable(f.ring, i))
    elif target_ring.field != f.ring.field:
        target_ring = Ring(target_ring.names, _wider(target_ring.field, f.ring.field))

    # cache powers of each image; exponents are small at desk scale
    powers: dict[tuple[int, int], Poly] = {}

    def power(i: int, e: int) -> Poly:
        key = (i, e)
        if key not in powers:
            if e == 0:
                powers[key] = Poly.constant(target_ring, 1)
            else:
                powers[key] = power(i, e - 1).mul_truncated(images[i], n)
        return powers[key]

    result = Poly(target_ring)
    for mono, coeff in f.items():
        term = Poly.constant(target_ring, coeff)
        for i, e in enumerate(mono):
            if e:
                term = term.mul_truncated(power(i, e), n)
                if term.is_zero():
                    break
        result = result + term
    return result


def _rank(rows: list[list]) -> int:
    rows = [list(r) for r in rows if any(r)]
    rank = 0
    ncols = max((len(r) for r in rows), default=0)
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        p = rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                factor = rows[i][col] / p[col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], p)]
        rank += 1
    return rank


def jacobian_rank_at_zero(polys: Sequence[Poly]) -> int:
    """Rank of the matrix of linear coefficients of ``polys`` at the origin."""
    return _rank([p.linear_part() for p in polys])


# text format ----------------------------------------------------------------

def _format_coeff(c) -> str:
    if isinstance(c, Fraction):
        return str(c)
    return str(c)


def _is_negative(c) -> bool:
    if isinstance(c, Fraction):
        return c < 0
    if isinstance(c, GaussianRational) and c.im == 0:
        return c.re < 0
    return False


def format_monomial(names: Sequence[str], mono: Monomial) -> str:
    parts = []
    for name, e in zip(names, mono):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return " ".join(parts)


def format_poly(p: Poly) -> str:
    if p.is_zero():
        return "0"
    out = []
    for k, (mono, c) in enumerate(p.items()):
        negative = _is_negative(c)
        mag = -c if negative else c
        body = format_monomial(p.ring.names, mono)
        if not body:
            text = _format_coeff(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{_format_coeff(mag)} * {body}"
        if k == 0:
            out.append(f"-{text}" if negative else text)
        else:
            out.append(f"- {text}" if negative else f"+ {text}")
    return " ".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


class PolySyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at column {pos + 1} in {text!r}")
        self.pos = pos


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        else:
            tokens.append(("op", m.group(3), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def variables_in(text: str) -> tuple[str, ...]:
    """Sorted variable names occurring in a polynomial string."""
    return tuple(sorted({v for kind, v, _ in _tokenize(text) if kind == "name"}))


def parse_poly(text: str, names: Sequence[str] | None = None) -> Poly:
    """Parse the text format.  Without ``names`` the ring is the sorted set of
    variables that occur."""
    if names is None:
        names = variables_in(text)
    ring = Ring(tuple(names))
    tokens = _tokenize(text)
    i = 0

    def peek():
        return tokens[i]

    def take(kind=None, value=None):
        nonlocal i
        tok = tokens[i]
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind
            raise PolySyntaxError(f"expected {want!r}, found {tok[1] or 'end of input'!r}", text, tok[2])
        i += 1
        return tok

    def starts_factor(tok) -> bool:
        return tok[0] in ("int", "name") or tok[1] == "("

    def expr() -> Poly:
        if peek()[1] in ("+", "-"):
            sign = take()[1]
            result = term()
            if sign == "-":
                result = -result
        else:
            result = term()
        while peek()[1] in ("+", "-"):
            sign = take()[1]
            rhs = term()
            result = result + rhs if sign == "+" else result - rhs
        return result

    def term() -> Poly:
        result = factor()
        while True:
            tok = peek()
            if tok[1] == "*":
                take()
                result = result * factor()
            elif starts_factor(tok):
                result = result * factor()
            else:
                return result

    def factor() -> Poly:
        if peek()[1] == "-":
            take()
            return -factor()
        base = atom()
        if peek()[1] == "^":
            take()
            tok = take("int")
            base = base ** int(tok[1])
        return base

    def atom() -> Poly:
        tok = peek()
        if tok[0] == "int":
            take()
            value = Fraction(int(tok[1]))
            if peek()[1] == "/" :
                take()
                den = int(take("int")[1])
                if den == 0:
                    raise PolySyntaxError("zero denominator", text, tok[2])
                value = value / den
            return Poly.constant(ring, value)
        if tok[0] == "name":
            take()
            if tok[1] not in ring.names:
                raise PolySyntaxError(f"variable {tok[1]!r} not in {ring.names}", text, tok[2])
            return Poly.variable(ring, tok[1])
        if tok[1] == "(":
            take()
            inner = expr()
            take(value=")")
            return inner
        raise PolySyntaxError(f"unexpected {tok[1] or 'end of input'!r}", text, tok[2])

    if peek()[0] == "end":
        raise PolySyntaxError("empty polynomial", text, 0)
    result = expr()
    if peek()[0] != "end":
        tok = peek()
        raise PolySyntaxError(f"unexpected {tok[1]!r}", text, tok[2])
    return result
