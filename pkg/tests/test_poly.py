from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st_

from orbrec.fields import GaussianRational
from orbrec.poly import (
    Poly,
    PolySyntaxError,
    Ring,
    compose_truncate,
    jacobian_rank_at_zero,
    parse_poly,
)

R2 = Ring(("x", "y"))

coeffs = st_.fractions(min_value=-5, max_value=5, max_denominator=4)
monos = st_.tuples(st_.integers(0, 3), st_.integers(0, 3))
polys = st_.dictionaries(monos, coeffs, max_size=5).map(lambda d: Poly(R2, d))


def P(text, names=("s", "t")):
    return parse_poly(text, names)


class TestDifferentiate:
    def test_paper_partials(self):
        f = P("t^2 - s^6")
        assert f.differentiate("s") == P("-6 s^5")
        assert f.differentiate("t") == P("2 t")

    def test_constant(self):
        assert P("7", ("x",)).differentiate(0).is_zero()

    def test_bad_index(self):
        with pytest.raises(ValueError):
            P("s").differentiate(2)

    @given(polys, polys)
    def test_leibniz(self, p, q):
        for v in (0, 1):
            assert (p * q).differentiate(v) == p * q.differentiate(v) + q * p.differentiate(v)


@given(polys, polys, polys)
@settings(max_examples=60)
def test_distributive(p, q, r):
    assert (p + q) * r == p * r + q * r
    assert p - p == Poly(R2)


class TestComposeTruncate:
    def test_identity(self, st):
        f = P("t^2")
        s, t = st.gens()
        assert compose_truncate(f, {"s": s, "t": t}, 10) == f

    def test_swap(self, st):
        s, t = st.gens()
        assert compose_truncate(P("t^2 - s^4"), {"s": t, "t": s}, 10) == P("s^2 - t^4")

    def test_hand_expansion(self):
        # (t + s^2)^2 = t^2 + 2 s^2 t + s^4, all of degree < 5
        assert compose_truncate(P("t^2"), {"t": P("t + s^2")}, 5) == P("t^2 + 2 s^2 t + s^4")
        assert compose_truncate(P("t^2"), {"t": P("t + s^2")}, 4) == P("t^2 + 2 s^2 t")

    def test_rejects_constant_term(self):
        with pytest.raises(ValueError, match="constant term"):
            compose_truncate(P("t^2"), {"t": P("t + 1")}, 5)

    @given(polys, st_.integers(1, 8))
    def test_identity_is_truncation(self, f, n):
        x, y = R2.gens()
        assert compose_truncate(f, {"x": x, "y": y}, n) == f.truncate(n)

    @given(polys, st_.integers(2, 6), st_.data())
    @settings(max_examples=40)
    def test_associative_up_to_truncation(self, f, n, data):
        germ = st_.dictionaries(monos.filter(lambda m: sum(m) >= 1), st_.integers(-2, 2), max_size=3)
        phi = {v: Poly(R2, data.draw(germ)) for v in ("x", "y")}
        psi = {v: Poly(R2, data.draw(germ)) for v in ("x", "y")}
        lhs = compose_truncate(compose_truncate(f, phi, n), psi, n)
        inner = {v: compose_truncate(phi[v], psi, n) for v in phi}
        rhs = compose_truncate(f, inner, n)
        assert lhs == rhs


class TestJacobianRank:
    def test_examples(self, stu):
        assert jacobian_rank_at_zero([parse_poly("s^2 + t^2 - u^3", stu.names)]) == 0
        assert jacobian_rank_at_zero([parse_poly("u", stu.names)]) == 1
        assert jacobian_rank_at_zero([P("s + t"), P("s - t")]) == 2
        assert jacobian_rank_at_zero([P("s + t"), P("2 s + 2 t + s^2")]) == 1


class TestTextFormat:
    def test_canonical_order(self):
        assert str(P("t^2 - s^6")) == "-s^6 + t^2"
        assert str(P("t^2 + 2*s^2*t + s^4")) == "s^4 + 2 * s^2 t + t^2"

    def test_rationals_and_juxtaposition(self):
        p = parse_poly("3/4 x^2 y - 1/2 * y + 2", ("x", "y"))
        assert p.coefficient((2, 1)) == Fraction(3, 4)
        assert p.coefficient((0, 1)) == Fraction(-1, 2)
        assert str(p) == "3/4 * x^2 y - 1/2 * y + 2"

    def test_parentheses_and_powers(self):
        assert P("(s + t)^2") == P("s^2 + 2 s t + t^2")
        assert P("-(s - t)") == P("t - s")

    @given(polys)
    def test_round_trip(self, p):
        assert parse_poly(str(p), R2.names) == p

    @pytest.mark.parametrize("bad", ["", "s +", "s^", "q", "s ** 2", "(s", "1/0"])
    def test_errors(self, bad):
        with pytest.raises(PolySyntaxError):
            P(bad)

    def test_default_ring_is_sorted_names(self):
        assert parse_poly("u^4 - s^2").ring.names == ("s", "u")


def test_gaussian_coefficients():
    z = Ring(("z", "zb"), "QQ(i)")
    p = Poly(z, {(1, 0): GaussianRational(0, 1)})
    assert (p * p).coefficient((2, 0)) == -1
    assert p.conjugate().coefficient((1, 0)) == GaussianRational(0, -1)
    assert str(p) == "1*i * z"
