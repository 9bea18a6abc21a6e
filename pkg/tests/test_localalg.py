import random
from fractions import Fraction

import pytest

from oracles import groebner_quotient_dim, random_substitution, truncated_quotient_dim
from orbrec.localalg import (
    INFINITE,
    NotCriticalError,
    jacobian_ideal,
    local_algebra,
    milnor_codimension,
    monomials_below,
    quotient_dimension_truncated,
    stabilization_degree,
)
from orbrec.poly import compose_truncate, parse_poly


def P(text, names=("s", "t")):
    return parse_poly(text, names)


STU = ("s", "t", "u")


@pytest.mark.parametrize("k", range(1, 9))
def test_dihedral_germs(k):
    # [DERIVED] J = (s^(2k-1), t): standard monomials 1, s, ..., s^(2k-2)
    assert milnor_codimension(P(f"t^2 - s^{2 * k}")) == 2 * k - 1


@pytest.mark.parametrize("k", range(2, 9))
def test_cyclic_germs(k):
    # [DERIVED] J = (s, t, u^(k-1)): standard monomials 1, u, ..., u^(k-2)
    assert milnor_codimension(P(f"s^2 + t^2 - u^{k}", STU)) == k - 1


def test_paper_worked_example():
    # [PAPER] t^2 - s^6: J = (s^5, t), basis 1, s, s^2, s^3, s^4, cod 5
    alg = local_algebra(P("t^2 - s^6"))
    assert alg.stable
    assert alg.dimension == 5
    assert alg.basis_strings() == ["1", "s", "s^2", "s^3", "s^4"]


def test_morse_and_regular_cases():
    assert milnor_codimension(P("s^2 + t^2")) == 1
    assert milnor_codimension(P("s^2 - t^2")) == 1
    # s^2 + t^2 - u^2 is a Morse germ in three variables
    assert milnor_codimension(P("s^2 + t^2 - u^2", STU)) == 1


def test_non_isolated():
    assert milnor_codimension(P("x^2", ("x", "y")), n_max=24) is INFINITE
    assert str(INFINITE) == "infinite"
    assert stabilization_degree(P("x^2", ("x", "y")), n_max=12) is None


def test_not_critical():
    with pytest.raises(NotCriticalError):
        milnor_codimension(P("s + t^2"))


def test_monomials_below_is_graded():
    cols = monomials_below(2, 3)
    assert cols == ((0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0))


ORACLE_GERMS = [
    "t^2 - s^6",
    "s^3 + t^3",
    "s^2 t + t^4",
    "s^4 + t^4 + s^2 t^2",
    "s^3 + s t^3",
    "s^5 + t^3",
]


@pytest.mark.parametrize("text", ORACLE_GERMS)
def test_truncated_dimension_matches_dense_rank(text):
    # [DERIVED] sympy rank over Q on all monomial multiples
    gens = list(jacobian_ideal(P(text)).generators)
    for n in range(1, 9):
        assert quotient_dimension_truncated(jacobian_ideal(P(text)), n).dimension == truncated_quotient_dim(gens, n)


@pytest.mark.parametrize("text", ORACLE_GERMS + ["s^2 + t^2 + u^5", "s^3 + t^2 + u^3"])
def test_codimension_matches_groebner(text):
    # [DERIVED] quasi-homogeneous germs: local = global dimension of Q[x]/J
    names = STU if "u" in text else ("s", "t")
    f = P(text, names)
    assert milnor_codimension(f) == groebner_quotient_dim(f)


@pytest.mark.parametrize("text", ["t^2 - s^6", "s^3 + t^3", "s^2 t + t^4", "t^2 - s^4 + s^3 t"])
def test_monotone_stabilisation(text):
    gens = jacobian_ideal(P(text))
    dims = [quotient_dimension_truncated(gens, n) for n in range(1, 16)]
    values = [d.dimension for d in dims]
    assert values == sorted(values)
    first = next(i for i, d in enumerate(dims) if d.stable)
    assert len(set(values[first:])) == 1
    assert all(d.stable for d in dims[first:])


def test_scaling_invariance():
    f = P("s^3 + s t^3")
    for c in (Fraction(-1), Fraction(3, 7), Fraction(5)):
        assert milnor_codimension(f * c) == milnor_codimension(f)


def test_stabilisation_degree_example():
    # m^5 is the first power inside (s^5, t) + m^6
    assert stabilization_degree(P("t^2 - s^6")) == 6


def safe_degree(f, subst):
    growth = max(p.degree() for p in subst.values())
    return stabilization_degree(f) + growth


@pytest.mark.parametrize("text", ["t^2 - s^4", "s^3 + t^3", "s^2 t + t^4"])
def test_invariance_under_small_substitutions(text):
    rng = random.Random(f"inv-{text}")
    f = P(text)
    c = milnor_codimension(f)
    for _ in range(8):
        phi = random_substitution(rng, f.ring)
        assert milnor_codimension(compose_truncate(f, phi, safe_degree(f, phi))) == c
