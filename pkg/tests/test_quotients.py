import cmath
from fractions import Fraction
from itertools import product

import pytest

from orbrec.fields import CyclotomicNumber, GaussianRational
from orbrec.localalg import milnor_codimension
from orbrec.poly import Poly, parse_poly
from orbrec.quotients import (
    COMPLEX,
    PLANE,
    GroupElement,
    IsotropyGroupKind,
    act_on_poly,
    invariant_generators,
    is_invariant,
    make_group,
    model_certificates,
    rotation_invariant_monomial,
    semialgebraic_model,
    stratify,
    to_complex,
)
from orbrec.strata import validate

GROUPS = (
    [IsotropyGroupKind.trivial()]
    + [IsotropyGroupKind.cyclic(k) for k in range(1, 9)]
    + [IsotropyGroupKind.dihedral(k) for k in range(1, 9)]
)


def numeric(c) -> complex:
    if isinstance(c, CyclotomicNumber):
        zeta = cmath.exp(2j * cmath.pi / c.m)
        return sum(float(a) * zeta ** j for j, a in enumerate(c.coeffs))
    if isinstance(c, GaussianRational):
        return complex(float(c.re), float(c.im))
    return complex(float(c))


def evaluate_complex(p: Poly, z: complex) -> complex:
    return sum(numeric(c) * z ** a * z.conjugate() ** b for (a, b), c in p.items())


def evaluate_plane(p: Poly, w: complex) -> complex:
    return sum(numeric(c) * w.real ** a * w.imag ** b for (a, b), c in p.items())


def move(g: GroupElement, z: complex) -> complex:
    w = z.conjugate() if g.b else z
    return cmath.exp(2j * cmath.pi * g.a / g.k) * w


class TestGroupElements:
    @pytest.mark.parametrize("k", range(1, 9))
    def test_group_axioms(self, k):
        elems = IsotropyGroupKind.dihedral(k).elements()
        assert len(set(elems)) == 2 * k
        e = GroupElement(0, 0, k)
        for g in elems:
            assert g * e == g == e * g
            assert g * g.inverse() == e
            assert g ** g.order() == e
            for h in elems:
                assert g * h in elems
                for j in elems:
                    assert (g * h) * j == g * (h * j)

    @pytest.mark.parametrize("k", range(1, 9))
    def test_two_reflections_give_rotation_of_order_k(self, k):
        b1, b2 = GroupElement(0, 1, k), GroupElement(1, 1, k)
        assert b1 ** 2 == b2 ** 2 == GroupElement(0, 0, k)
        assert (b2 * b1).order() == k
        assert (b2 * b1) ** k == GroupElement(0, 0, k)

    def test_normal_form_matches_rotation_matrices(self):
        # [DERIVED] compose the maps z -> move(g, z) numerically
        k = 5
        z = complex(0.3, 0.7)
        for g, h in product(IsotropyGroupKind.dihedral(k).elements(), repeat=2):
            # (g * h) . z = g . (h . z)
            assert abs(move(g * h, z) - move(g, move(h, z))) < 1e-12

    def test_make_group(self):
        assert make_group("trivial") == IsotropyGroupKind.trivial()
        assert make_group("cyclic", 4).order() == 4
        assert make_group("dihedral", 3).symbol() == "D_3"
        assert str(make_group("dihedral", 3)) == "dihedral k=3"
        with pytest.raises(ValueError):
            make_group("cyclic", 0)
        with pytest.raises(ValueError):
            make_group("icosahedral", 2)


class TestAction:
    def test_rotation_by_quarter_turn(self):
        # z -> i z maps x -> -y, y -> x
        g = GroupElement(1, 0, 4)
        x = parse_poly("x", PLANE.names)
        assert act_on_poly(g, x) == to_complex(parse_poly("-y", PLANE.names))

    def test_reflection_fixes_x_negates_y(self):
        c = GroupElement(0, 1, 3)
        assert act_on_poly(c, parse_poly("x", PLANE.names)) == to_complex(parse_poly("x", PLANE.names))
        assert act_on_poly(c, parse_poly("y", PLANE.names)) == to_complex(parse_poly("-y", PLANE.names))

    @pytest.mark.parametrize("k", [3, 5, 6, 8])
    def test_matches_numeric_pullback(self, k):
        # [DERIVED] act_on_poly(g, p)(z) == p(g . z) at a sample point
        p = parse_poly("x^3 - 2 x y + 1/3 y^2 + y", PLANE.names)
        z = complex(0.4, -0.9)
        for g in IsotropyGroupKind.dihedral(k).elements():
            lhs = evaluate_complex(act_on_poly(g, p), z)
            assert abs(lhs - evaluate_plane(p, move(g, z))) < 1e-9

    def test_congruence_law_brute_force(self):
        # z^a zb^b is rotation-invariant iff a = b mod k
        for k in range(1, 9):
            rho = GroupElement(1 % k, 0, k)
            for a, b in product(range(13), repeat=2):
                mono = Poly(COMPLEX, {(a, b): 1})
                fixed = act_on_poly(rho, mono) == mono
                assert fixed == rotation_invariant_monomial(a, b, k) == ((a - b) % k == 0)


class TestInvariants:
    @pytest.mark.parametrize("group", GROUPS, ids=str)
    def test_generators_are_invariant(self, group):
        for p in invariant_generators(group):
            assert is_invariant(p, group)

    @pytest.mark.parametrize("k", range(2, 9))
    def test_non_invariants(self, k):
        x = parse_poly("x", PLANE.names)
        assert not is_invariant(x, IsotropyGroupKind.cyclic(k))
        im = invariant_generators(IsotropyGroupKind.cyclic(k))[1]
        assert not is_invariant(im, IsotropyGroupKind.dihedral(k))

    def test_hilbert_map_shapes(self):
        assert [str(p) for p in invariant_generators(IsotropyGroupKind.dihedral(2))] == [
            "x^2 + y^2", "x^2 - y^2"]
        assert [str(p) for p in invariant_generators(IsotropyGroupKind.cyclic(3))] == [
            "x^3 - 3 * x y^2", "3 * x^2 y - y^3", "x^2 + y^2"]


class TestModels:
    @pytest.mark.parametrize("k", range(1, 9))
    def test_certificates(self, k):
        assert model_certificates(IsotropyGroupKind.cyclic(k)) == {"cyclic-equality": True}
        assert model_certificates(IsotropyGroupKind.dihedral(k)) == {"dihedral-inequality": True}

    @pytest.mark.parametrize("k", range(1, 9))
    def test_dihedral_germ_and_region(self, k):
        m = semialgebraic_model(IsotropyGroupKind.dihedral(k))
        assert m.variables == ("s", "t")
        assert m.germ == parse_poly(f"t^2 - s^{2 * k}", m.variables)
        assert milnor_codimension(m.germ) == 2 * k - 1
        # sample points of the image z -> (|z|, Re z^k) satisfy the inequalities
        for z in (complex(0.5, 0.2), complex(-1.1, 0.4), complex(0.0, -0.7)):
            pt = {"s": abs(z), "t": (z ** k).real}
            for q in m.inequalities:
                val = sum(float(c) * pt["s"] ** a * pt["t"] ** b for (a, b), c in q.items())
                assert val >= -1e-12

    @pytest.mark.parametrize("k", range(2, 9))
    def test_cyclic_germ(self, k):
        m = semialgebraic_model(IsotropyGroupKind.cyclic(k))
        assert m.equalities == (m.germ,)
        assert milnor_codimension(m.germ) == k - 1

    def test_smooth_models(self):
        assert semialgebraic_model(IsotropyGroupKind.trivial()).germ is None
        assert semialgebraic_model(IsotropyGroupKind.cyclic(1)).germ is None


class TestStratify:
    @pytest.mark.parametrize("group", GROUPS, ids=str)
    def test_valid(self, group):
        assert validate(stratify(group)) == []

    def test_dihedral_shape(self):
        m = stratify(IsotropyGroupKind.dihedral(3))
        assert [(s.id, s.codim, s.order) for s in m.strata] == [
            ("origin", 2, 6), ("mirror+", 1, 2), ("mirror-", 1, 2), ("regular", 0, None)]
        assert ("origin", "regular") in m.closure_relation()

    def test_cyclic_shape(self):
        m = stratify(IsotropyGroupKind.cyclic(5))
        assert [(s.id, s.codim, s.order) for s in m.strata] == [("origin", 2, 5), ("regular", 0, None)]

    def test_trivial_shape(self):
        assert stratify(IsotropyGroupKind.trivial()).ids() == ["regular"]
