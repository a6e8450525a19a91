"""Connection matrices: characteristic polynomial and localization."""

import random
from fractions import Fraction

import pytest

from conftest import mat
from specrig.errors import InputError, UnsupportedPoleLocation
from specrig.matrf import (charpoly, default_truncation, entry_form_valuation,
                           localize, localize_charpoly, pole_order,
                           validate_poles)
from specrig.ratfn import INFINITY, RatFn


F = Fraction


class TestCharpoly:
    def test_airy(self):
        cp = charpoly(mat([["0", "1"], ["z", "0"]]))
        assert cp.degree == 2
        assert cp.coeffs[2] == RatFn.const(1)
        assert cp.coeffs[1].is_zero()
        assert cp.coeffs[0] == -RatFn.var()

    def test_diagonal(self):
        cp = charpoly(mat([["1/z", "0"], ["0", "2"]]))
        # (y - 1/z)(y - 2)
        assert cp.coeffs[0] == RatFn.const(2) / RatFn.var()
        assert cp.coeffs[1] == -(RatFn.const(2) + 1 / RatFn.var())

    def test_similarity_invariance(self):
        rng = random.Random(5)
        a = mat([["0", "1", "z"], ["1/z", "0", "0"], ["0", "z^2", "1"]])
        base = charpoly(a)
        for _ in range(5):
            while True:
                p = [[F(rng.randint(-3, 3)) for _ in range(3)]
                     for _ in range(3)]
                try:
                    b = a.conjugate_by(p)
                    break
                except InputError:
                    continue
            assert charpoly(b).coeffs == base.coeffs

    def test_conjugation_requires_invertible(self):
        a = mat([["z"]])
        with pytest.raises(InputError):
            a.conjugate_by([[0]])


class TestLocalData:
    def test_form_valuation_at_infinity(self):
        assert entry_form_valuation(RatFn.const(1), INFINITY) == -2
        z = RatFn.var()
        assert entry_form_valuation(1 / z ** 2, INFINITY) == 0
        assert entry_form_valuation(z, INFINITY) == -3
        assert entry_form_valuation(RatFn.const(0), INFINITY) is None

    def test_pole_order_airy(self):
        a = mat([["0", "1"], ["z", "0"]])
        assert pole_order(a, INFINITY) == 3

    def test_pole_order_finite(self):
        a = mat([["1/z^2"]])
        assert pole_order(a, F(0)) == 2
        assert pole_order(a, F(1)) == 0

    def test_localize_infinity_jacobian(self):
        a = mat([["0", "1"], ["z", "0"]])
        g, nu = localize(a, INFINITY, 8)
        assert nu == 3
        assert g[0][1].terms == {F(-2): -1}
        assert g[1][0].terms == {F(-3): -1}
        assert g[0][0].known_zero_to_prec() or g[0][0].is_zero()

    def test_localize_finite(self):
        a = mat([["1/z^2"]])
        g, nu = localize(a, F(0), 6)
        assert nu == 2
        assert g[0][0].terms == {F(-2): 1}

    def test_localize_charpoly_airy(self):
        cp = charpoly(mat([["0", "1"], ["z", "0"]]))
        coeffs = localize_charpoly(cp, INFINITY, 8)
        # y^2 - z becomes y^2 - w^{-5} after the chart twist
        assert coeffs[2].terms == {F(0): 1}
        assert coeffs[1].known_zero_to_prec() or coeffs[1].is_zero()
        assert coeffs[0].terms == {F(-5): -1}

    def test_localize_charpoly_finite(self):
        cp = charpoly(mat([["1/z", "0"], ["0", "2"]]))
        coeffs = localize_charpoly(cp, F(0), 6)
        assert coeffs[0].terms == {F(-1): 2}
        assert coeffs[1].terms == {F(-1): -1, F(0): -2}


class TestValidatePoles:
    def test_undeclared_pole_raises(self):
        a = mat([["1/z"]])
        with pytest.raises(InputError):
            validate_poles(a, [INFINITY])

    def test_undeclared_infinity_raises(self):
        a = mat([["z"]])
        with pytest.raises(InputError):
            validate_poles(a, [])

    def test_irrational_pole_unsupported(self):
        a = mat([["1/(z^2 - 2)"]])
        with pytest.raises(UnsupportedPoleLocation):
            validate_poles(a, [F(0)])

    def test_spurious_declared_warns(self):
        a = mat([["1/z^2"]])
        warnings = validate_poles(a, [F(0), F(1)])
        assert len(warnings) == 1 and "z = 1" in warnings[0]

    def test_clean(self):
        a = mat([["0", "1"], ["z", "0"]])
        assert validate_poles(a, [INFINITY]) == []


def test_default_truncation_floor():
    assert default_truncation(2, 3) == 2 * (6 + 4 + 4)
    assert default_truncation(1, 0) >= 8
