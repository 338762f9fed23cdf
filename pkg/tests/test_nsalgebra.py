import random
from fractions import Fraction

import pytest

from supersphere import nsalgebra as ns
from supersphere.grassmann import Supernumber
from supersphere.scalars import grat
from supersphere.superfield import SuperPolynomial, THETA_MINUS, THETA_PLUS


def e(key):
    return ns.NSElement.basis(key)


class TestBrackets:
    def test_supercharge_anticommutator(self):
        got = ns.bracket(e(ns.Gp(1)), e(ns.Gm(-1)))
        assert got == ns.NSElement({ns.L(0): grat(2), ns.J(0): grat(1)})

    def test_virasoro_central_term(self):
        # [L_2, L_-2] = 4 L_0 + (1/12)(8 - 2) d
        got = ns.bracket(e(ns.L(2)), e(ns.L(-2)))
        assert got == ns.NSElement({ns.L(0): grat(4),
                                    ns.CENTRAL: grat(Fraction(1, 2))})

    def test_same_sign_supercharges_vanish(self):
        assert ns.bracket(e(ns.Gp(1)), e(ns.Gp(3))).is_zero()
        assert ns.bracket(e(ns.Gm(-1)), e(ns.Gm(-1))).is_zero()

    def test_charge_rotations(self):
        assert ns.bracket(e(ns.J(1)), e(ns.J(-1))) == \
            ns.NSElement({ns.CENTRAL: grat(Fraction(1, 3))})
        assert ns.bracket(e(ns.L(2)), e(ns.J(1))) == \
            ns.NSElement({ns.J(3): grat(-1)})
        assert ns.bracket(e(ns.J(0)), e(ns.Gm(5))) == \
            ns.NSElement({ns.Gm(5): grat(-1)})

    def test_central_element_is_central(self):
        for key in (ns.L(2), ns.J(-1), ns.Gp(3), ns.CENTRAL):
            assert ns.bracket(e(ns.CENTRAL), e(key)).is_zero()

    def test_skew_supersymmetry(self):
        rng = random.Random(3)
        keys = ns.band_symbols(3)
        for _ in range(60):
            k1 = keys[rng.randrange(len(keys))]
            k2 = keys[rng.randrange(len(keys))]
            u, v = e(k1), e(k2)
            sign = (-1) ** (ns.key_parity(k1) * ns.key_parity(k2))
            assert ns.bracket(u, v) == ns.bracket(v, u).scale(grat(-sign))

    def test_half_integer_indices_rejected(self):
        with pytest.raises(ValueError):
            ns.Gp(2)


class TestJacobi:
    def test_exhaustive_band_two(self):
        assert ns.jacobi_check(2) == []

    def test_single_triples(self):
        assert ns.jacobi_defect(e(ns.L(1)), e(ns.L(-1)), e(ns.L(0))).is_zero()
        assert ns.jacobi_defect(e(ns.Gp(1)), e(ns.Gm(-1)), e(ns.J(0))).is_zero()


class TestRepresentation:
    def test_charge_rotation_field(self):
        field = ns.representation(ns.J(0))
        assert field.c_x.is_zero()
        assert field.c_plus == SuperPolynomial(0, 2, {(0, 1): grat(-1)})
        assert field.c_minus == SuperPolynomial(0, 2, {(0, 2): grat(1)})

    def test_lowest_supercharge_field(self):
        field = ns.representation(ns.Gp(-1))
        assert field.c_plus == SuperPolynomial(0, 2, {(0, 0): grat(-1)})
        assert field.c_x == SuperPolynomial(0, 2, {(0, 2): grat(1)})
        assert field.c_minus.is_zero()

    def test_central_maps_to_zero(self):
        assert ns.representation(ns.CENTRAL).is_zero()

    def test_bracket_images(self):
        # [rep L_1, rep L_-1] equals rep(2 L_0)
        got = ns.representation(ns.L(1)).bracket(ns.representation(ns.L(-1)))
        assert got == ns.represent(e(ns.L(0)).scale(2))
        # odd pair lands on 2 L_0 + J_0
        got = ns.representation(ns.Gp(1)).bracket(ns.representation(ns.Gm(-1)))
        assert got == ns.represent(
            ns.NSElement({ns.L(0): grat(2), ns.J(0): grat(1)}))
        # the central part of [L_2, L_-2] disappears in the representation
        got = ns.representation(ns.L(2)).bracket(ns.representation(ns.L(-2)))
        assert got == ns.represent(e(ns.L(0)).scale(4))

    def test_band_two_pairs(self):
        assert ns.representation_check(2) == []


class TestSubalgebras:
    def test_twist_zero_basis(self):
        basis = ns.subalgebra_basis(0)
        keys = {k for element in basis for k in element.terms}
        assert keys == {ns.L(-1), ns.L(0), ns.L(1), ns.J(0),
                        ns.Gp(-1), ns.Gp(1), ns.Gm(-1), ns.Gm(1)}
        # pair count of the closure table for eight basis elements
        assert len(basis) * (len(basis) + 1) // 2 == 36

    def test_twist_five_tower(self):
        basis = ns.subalgebra_basis(5)
        odd = [el for el in basis if el.parity() == 1]
        assert len(odd) == 7
        keys = [list(el.terms)[0] for el in odd]
        assert keys[0] == ns.Gm(-1) and keys[-1] == ns.Gm(11)

    def test_negative_one_contains_high_plus(self):
        basis = ns.subalgebra_basis(-1)
        keys = {k for el in basis for k in el.terms}
        assert ns.Gp(3) in keys

    def test_dimensions(self):
        for n in range(-6, 7):
            even, odd = ns.subalgebra_dimensions(n)
            assert even == 4
            assert odd == (4 if abs(n) <= 2 else abs(n) + 2)
        # the two rules agree at |n| = 2
        assert ns.subalgebra_dimensions(2)[1] == 4 == 2 + 2

    def test_closure(self):
        for n in range(-6, 7):
            assert ns.closure_violations(n) == []

    def test_sigma_tables(self):
        for n in (2, 3, 4, -2, -3, -4):
            assert ns.sigma_action_violations(n) == []

    def test_tower_boundary(self):
        u = e(ns.L(1)) - e(ns.J(1)).scale(3)
        assert ns.bracket(u, e(ns.Gm(7))).is_zero()

    def test_span_solver(self):
        basis = ns.subalgebra_basis(0)
        target = ns.bracket(e(ns.Gp(1)), e(ns.Gm(-1)))
        coeffs = ns.span_coefficients(target, basis)
        assert coeffs is not None
        rebuilt = ns.NSElement.zero()
        for c, b in zip(coeffs, basis):
            rebuilt = rebuilt + b.scale(c)
        assert rebuilt == target
        assert ns.span_coefficients(e(ns.L(5)), basis) is None


class TestFlows:
    def test_translation_flow(self):
        series = ns.flow(e(ns.L(-1)), order=4)
        x = SuperPolynomial.z_power(0, 1)
        assert series.rows[0][0] == x
        assert series.rows[1][0] == SuperPolynomial.one(0)
        assert series.rows[2][0].is_zero()
        assert series.rows[1][1].is_zero() and series.rows[1][2].is_zero()

    def test_odd_flow_exact(self):
        series = ns.flow(e(ns.Gp(-1)))
        assert series.order() == 1
        L = 4
        xi = Supernumber.generator(L, 1)
        x_out, plus_out, minus_out = series.evaluate(xi)
        x = SuperPolynomial.z_power(L, 1)
        phi_plus = SuperPolynomial.theta(L, THETA_PLUS)
        phi_minus = SuperPolynomial.theta(L, THETA_MINUS)
        # (x + phi- xi, xi + phi+, phi-)
        assert x_out == x + phi_minus.scale_right(xi)
        assert plus_out == SuperPolynomial.constant(L, xi) + phi_plus
        assert minus_out == phi_minus

    def test_special_flow_series(self):
        n = 2
        series = ns.flow(e(ns.L(1)) - e(ns.J(1)).scale(n), order=5)
        for k in range(6):
            assert series.rows[k][0] == SuperPolynomial.z_power(0, k + 1)
        # phi+ side carries (1 - y x)^(n-1) = 1 - y x for n = 2
        assert series.rows[1][1] == SuperPolynomial(
            0, 2, {(1, 1): grat(-1)})
        assert series.rows[2][1].is_zero()

    def test_flow_parameter_parity_checked(self):
        series = ns.flow(e(ns.Gp(-1)))
        with pytest.raises(ValueError):
            series.evaluate(Supernumber.one(4))

    def test_odd_flows_compose_additively(self):
        L = 6
        xi1 = Supernumber.generator(L, 1)
        xi2 = Supernumber.generator(L, 2)
        series = ns.flow(e(ns.Gm(3)))

        def as_triple(value):
            from supersphere.superfield import RationalSuperfunction
            from supersphere.superconformal import CoordinateTriple
            coords = series.evaluate(value)
            return CoordinateTriple(*(RationalSuperfunction(c) for c in coords))

        lhs = as_triple(xi1).compose(as_triple(xi2))
        rhs = as_triple(xi1 + xi2)
        assert lhs == rhs

    def test_exponential_coefficients(self):
        series = ns.exp_coefficient_series(Fraction(1, 2), 4)
        assert series[2] == grat(Fraction(1, 8))
        assert series[3] == grat(Fraction(1, 48))


def test_bracket_table_export():
    import json
    table = ns.bracket_table(1)
    blob = json.dumps(table, sort_keys=True)
    assert json.loads(blob) == table
    assert table["L(1)"]["L(-1)"] == {"L(0)": "2"}
    assert table["G+(1/2)"]["G-(-1/2)"] == {"J(0)": "1", "L(0)": "2"}
    assert "d" not in table["L(1)"].get("L(1)", {})
