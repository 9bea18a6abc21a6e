"""Codimension of a polynomial germ at the origin.

``cod(f)`` is the dimension of the local algebra of germs modulo the Jacobian
ideal.  It is computed by exact row reduction of the truncations
``R[x]/(J + m^N)`` for growing ``N``.  Once every monomial of degree ``N - 1``
lies in ``J + m^N``, Nakayama's lemma gives ``m^(N-1) ⊆ J`` in the local ring,
so the truncated dimension is the true one.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd, lcm
from itertools import combinations_with_replacement

from .poly import Monomial, Poly, format_monomial, jacobian_rank_at_zero

DEFAULT_NMAX = 64


class _Infinite:
    """Result marker for a germ whose critical point is not isolated."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"

    def __str__(self):
        return "infinite"

    def __reduce__(self):
        return (_Infinite, ())


INFINITE = _Infinite()


class NotCriticalError(ValueError):
    pass


@dataclass(frozen=True)
class JacobianIdealGens:
    generators: tuple[Poly, ...]

    def __post_init__(self):
        if not self.generators:
            raise ValueError("Jacobian ideal needs at least one generator")
        arity = self.generators[0].ring.arity
        if any(g.ring.arity != arity for g in self.generators):
            raise ValueError("generators of mixed arity")

    @property
    def arity(self) -> int:
        return self.generators[0].ring.arity

    @property
    def names(self) -> tuple[str, ...]:
        return self.generators[0].ring.names


@dataclass(frozen=True)
class TruncatedLocalAlgebra:
    degree_bound: int
    standard_monomials: tuple[Monomial, ...]
    stable: bool
    names: tuple[str, ...] = ()

    @property
    def dimension(self) -> int:
        return len(self.standard_monomials)

    def basis_strings(self) -> list[str]:
        return [format_monomial(self.names, m) or "1" for m in self.standard_monomials]


def jacobian_ideal(f: Poly) -> JacobianIdealGens:
    if f.ring.arity < 1:
        raise ValueError("a germ needs at least one variable")
    return JacobianIdealGens(tuple(f.differentiate(i) for i in range(f.ring.arity)))


@lru_cache(maxsize=None)
def monomials_below(nvars: int, n: int) -> tuple[Monomial, ...]:
    """All monomials of total degree < n in ascending graded-lex order."""
    out = []
    for d in range(n):
        layer = []
        for combo in combinations_with_replacement(range(nvars), d):
            mono = [0] * nvars
            for v in combo:
                mono[v] += 1
            layer.append(tuple(mono))
        out.extend(sorted(layer))
    return tuple(out)


def _pivot_columns(gens: JacobianIdealGens, n: int) -> tuple[tuple[Monomial, ...], set[int]]:
    """Leading columns of an echelon basis of ``(J + m^n)/m^n``.

    Columns are monomials in ascending graded-lex order and each row is
    pivoted at its lowest column, so pivots are the leading monomials for a
    local degree ordering and the non-pivots form a staircase.  Dropping the
    top degree of this space gives the space for ``n - 1``, and rows led by a
    top-degree column vanish under that projection, so the pivots below
    degree ``d`` are exactly the pivots of the truncation at ``d``.
    """
    cols = monomials_below(gens.arity, n)
    index = {m: i for i, m in enumerate(cols)}
    # fraction-free elimination: rows are primitive integer vectors
    pivots: dict[int, dict[int, int]] = {}

    def insert(row: dict[int, int]) -> None:
        while row:
            lead = min(row)
            prow = pivots.get(lead)
            if prow is None:
                content = reduce(gcd, row.values())
                if row[lead] < 0:
                    content = -content
                pivots[lead] = {c: v // content for c, v in row.items()}
                return
            a, b = prow[lead], row[lead]
            out = {c: a * v for c, v in row.items()}
            for c, v in prow.items():
                new = out.get(c, 0) - b * v
                if new:
                    out[c] = new
                else:
                    out.pop(c, None)
            content = reduce(gcd, out.values(), 0)
            row = {c: v // content for c, v in out.items()} if content > 1 else out

    for g in gens.generators:
        g_order = g.order()
        if g_order is None:
            continue
        denom = reduce(lcm, (Fraction(c).denominator for _, c in g.items()), 1)
        g_terms = [(gm, int(Fraction(gc) * denom)) for gm, gc in g.items()]
        for mono in cols:
            if sum(mono) + g_order >= n:
                break
            row: dict[int, int] = {}
            for gm, gc in g_terms:
                prod = tuple(a + b for a, b in zip(mono, gm))
                i = index.get(prod)
                if i is not None:
                    row[i] = row.get(i, 0) + gc
            insert({c: v for c, v in row.items() if v})
    return cols, set(pivots)


def _truncation(cols, pivots, n, names) -> TruncatedLocalAlgebra:
    standard = tuple(m for i, m in enumerate(cols) if sum(m) < n and i not in pivots)
    stable = all(i in pivots for i, m in enumerate(cols) if sum(m) == n - 1)
    return TruncatedLocalAlgebra(n, standard, stable, names)


def quotient_dimension_truncated(gens: JacobianIdealGens, n: int) -> TruncatedLocalAlgebra:
    """Dimension and standard monomials of ``R[x]/(J + m^n)``.

    ``stable`` certifies ``m^(n-1) ⊆ J + m^n``: every monomial of degree
    ``n - 1`` is a pivot of the truncated ideal span.
    """
    if n < 1:
        raise ValueError("degree bound must be at least 1")
    cols, pivots = _pivot_columns(gens, n)
    return _truncation(cols, pivots, n, gens.names)


def local_algebra(f: Poly, n_max: int = DEFAULT_NMAX) -> TruncatedLocalAlgebra:
    """The first stable truncation of the local algebra of ``f``, or the
    unstable truncation at ``n_max`` if none stabilises.

    The degree bound grows by doubling; each reduction also answers every
    smaller bound, so the smallest stable bound is still found.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    if jacobian_rank_at_zero([f]) != 0:
        raise NotCriticalError(f"not a critical point: {f} has a nonzero linear part at 0")
    gens = jacobian_ideal(f)
    checked = 0
    bound = 1
    while True:
        bound = min(n_max, max(2 * bound, 2))
        cols, pivots = _pivot_columns(gens, bound)
        for n in range(checked + 1, bound + 1):
            result = _truncation(cols, pivots, n, gens.names)
            if result.stable:
                return result
        checked = bound
        if bound == n_max:
            return result


def milnor_codimension(f: Poly, n_max: int = DEFAULT_NMAX):
    """``cod(f)`` as an int, counting the constants, or ``INFINITE``."""
    alg = local_algebra(f, n_max)
    return alg.dimension if alg.stable else INFINITE


def stabilization_degree(f: Poly, n_max: int = DEFAULT_NMAX) -> int | None:
    """Smallest N with ``m^(N-1) ⊆ J_f + m^N``; None if above ``n_max``."""
    alg = local_algebra(f, n_max)
    return alg.degree_bound if alg.stable else None
