"""Plane-curve germs at infinity: Milnor numbers two ways, delta."""

from fractions import Fraction

import pytest

from conftest import mat
from specrig.errors import SpecrigError
from specrig.germs import (GermData, branch_intersection, branch_milnor,
                           delta_identity_holds, germ_equation,
                           germ_milnor_oracle, unbounded_branches)
from specrig.localmod import build_local, check_assumption
from specrig.ratfn import INFINITY


F = Fraction


@pytest.fixture
def airy_germ():
    local = build_local(mat([["0", "1"], ["z", "0"]]), INFINITY)
    check_assumption(local)
    return GermData(local)


@pytest.fixture
def sibling_germ():
    a = mat([["0", "1", "0", "0"],
             ["0", "0", "1", "0"],
             ["0", "0", "0", "1"],
             ["-4/z^6", "0", "5/z^3", "0"]])
    local = build_local(a, F(0))
    check_assumption(local)
    return GermData(local)


class TestAiry:
    def test_branch_data(self, airy_germ):
        assert airy_germ.r_c == 1
        assert airy_germ.local_inf == 5

    def test_milnor_both_routes(self, airy_germ):
        # one (2,5)-cusp: mu = (2-1)(5-1) = 4
        assert airy_germ.mu == 4
        assert airy_germ.mu_oracle_value == 4
        assert airy_germ.delta == 2

    def test_delta_identity(self, airy_germ):
        assert delta_identity_holds(airy_germ)

    def test_single_branch_milnor(self, airy_germ):
        assert branch_milnor(airy_germ, 0) == 4
        with pytest.raises(SpecrigError):
            branch_intersection(airy_germ, 0, 0)

    def test_germ_equation_is_cusp(self, airy_germ):
        f = germ_equation(airy_germ)
        # zeta^2 - z^5 (the minimal polynomial of the conjugate orbit)
        assert f.degree == 2
        assert f.coeffs[2].coeff(0) == 1
        assert f.coeffs[0].coeff(5) == -1
        assert not f.coeffs[1]


class TestTwoCusps:
    """Two (2,3)-cusp branches with pairwise intersection 6."""

    def test_branch_data(self, sibling_germ):
        assert sibling_germ.r_c == 2
        assert sibling_germ.local_inf == 6

    def test_branch_milnor(self, sibling_germ):
        assert branch_milnor(sibling_germ, 0) == 2
        assert branch_milnor(sibling_germ, 1) == 2

    def test_branch_intersection(self, sibling_germ):
        assert branch_intersection(sibling_germ, 0, 1) == 6

    def test_total_milnor(self, sibling_germ):
        # mu = mu_1 + mu_2 + 2(C_1, C_2) - r + 1 = 2 + 2 + 12 - 1 = 15
        assert sibling_germ.mu == 15
        assert sibling_germ.mu_oracle_value == 15
        assert sibling_germ.delta == 8

    def test_delta_identity(self, sibling_germ):
        assert delta_identity_holds(sibling_germ)


class TestDegenerateCases:
    def test_regular_pole_smooth_branch(self):
        local = build_local(mat([["5/z"]]), F(0))
        check_assumption(local)
        g = GermData(local)
        assert (g.r_c, g.local_inf, g.mu, g.delta) == (1, 1, 0, 0)
        assert delta_identity_holds(g)

    def test_irregular_rank1_smooth_branch(self):
        local = build_local(mat([["1/z^2"]]), F(0))
        check_assumption(local)
        g = GermData(local)
        assert (g.r_c, g.local_inf, g.mu, g.delta) == (1, 2, 0, 0)

    def test_no_unbounded_branches(self):
        # z = 1 is not a pole of the Airy system: no branch escapes
        local = build_local(mat([["0", "1"], ["z", "0"]]), F(1))
        check_assumption(local)
        assert unbounded_branches(local) == []
        g = GermData(local)
        assert (g.r_c, g.local_inf, g.mu, g.delta) == (0, 0, 0, 0)
        assert germ_milnor_oracle(g) == 0

    def test_fuchsian_node(self):
        local = build_local(mat([["(1/2)/z", "0"], ["0", "(1/3)/z"]]), F(0))
        check_assumption(local)
        g = GermData(local)
        # two smooth branches meeting transversally: mu = 1
        assert g.r_c == 2
        assert g.mu == 1
        assert g.mu_oracle_value == 1
        assert g.delta == 1
        assert delta_identity_holds(g)
