"""Plane-curve-germ invariants of the spectral curve at infinity points.

Over a pole a, the branches escaping to infinity are the Puiseux clusters
with negative root order.  In the chart zeta = 1/y the germ is the product
of the clusters' minimal polynomials in zeta; the Milnor number comes out
two ways: from the irregularity formulas, and from the z-valuation of the
zeta-resultant of the germ equation with its zeta-derivative.  Both must
agree.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InternalInconsistency, SpecrigError
from .localmod import HTLCell, LocalModule, delta_end, irr_end, irr_hom
from .qpoly import UPoly, resultant_det
from .series import Series


class GermData:
    """Branch data of one infinity point of the spectral curve."""

    __slots__ = ("pole", "n", "m", "branches", "r_c", "local_inf",
                 "mu", "mu_oracle_value", "delta", "local")

    def __init__(self, local: LocalModule):
        self.pole = local.pole
        self.n = local.n
        self.m = local.m
        self.local = local
        self.branches = unbounded_branches(local)
        self.r_c = len(self.branches)
        self.local_inf = sum(c.p + c.r for c in self.branches)
        if self.r_c == 0:
            self.mu = 0
            self.mu_oracle_value = 0
            self.delta = 0
            return
        self.mu = germ_milnor(self)
        self.mu_oracle_value = germ_milnor_oracle(self)
        self.delta = delta_invariant(self)


def unbounded_branches(local: LocalModule):
    """Cells whose branch passes through the infinity point:
    ord(q~/z) < 0, i.e. the representative root order is negative."""
    return [c for c in local.cells if c.cluster.order < 0]


def local_inf_intersection(g: GermData) -> int:
    return g.local_inf


def branch_intersection(g: GermData, i: int, j: int) -> int:
    """(C_i, C_j) = p_i r_j + p_j r_i + r_i r_j - Irr(Hom)."""
    if i == j:
        raise SpecrigError("intersection of a branch with itself is "
                           "undefined")
    ci, cj = g.branches[i], g.branches[j]
    return ci.p * cj.r + cj.p * ci.r + ci.r * cj.r - irr_hom(ci, cj)


def branch_milnor(g: GermData, i: int) -> int:
    """mu of one branch: (2p + r - 1)(r - 1) - Irr(End of the cell)."""
    c = g.branches[i]
    return (2 * c.p + c.r - 1) * (c.r - 1) - irr_hom(c, c)


def germ_milnor(g: GermData) -> int:
    """Formula route, with the proof's branch decomposition re-derived as
    an internal consistency check."""
    local = g.local
    if local.nu < 1 and g.r_c and any(c.p for c in g.branches):
        raise SpecrigError("no singularity data at a regular point")
    n = g.n
    value = (-n * n - irr_end(local) + 2 * (n - 1) * g.local_inf
             + (g.m - g.r_c) + 1)
    decomposed = sum(branch_milnor(g, i) for i in range(g.r_c))
    for i in range(g.r_c):
        for j in range(i + 1, g.r_c):
            decomposed += 2 * branch_intersection(g, i, j)
    decomposed += -g.r_c + 1
    if value != decomposed:
        raise InternalInconsistency(
            f"Milnor formula {value} disagrees with its branch "
            f"decomposition {decomposed}")
    return value


# -- oracle route ------------------------------------------------------------

def _newton_identities(power_sums, r):
    """Elementary symmetric functions e_1..e_r from power sums s_1..s_r."""
    es = [Series.const(Fraction(1))]
    for k in range(1, r + 1):
        acc = Series.zero()
        for i in range(1, k + 1):
            term = es[k - i] * power_sums[i - 1]
            acc = acc + (term if i % 2 else -term)
        es.append(acc * Fraction(1, k))
    return es[1:]


def _cluster_min_poly(cell: HTLCell) -> UPoly:
    """Minimal polynomial in zeta = 1/y of one cluster's conjugate orbit.

    Power sums of the conjugates of zeta_rep keep only integer exponents,
    each weighted by r (the phase sums of fractional exponents vanish).
    """
    r = cell.r
    rep = cell.cluster.rep
    zeta = rep.inverse(order=None if rep.prec is not None else
                       -rep.valuation() * (r + 2) + 4)
    sums = []
    power = Series.const(Fraction(1), zeta.prec)
    for _ in range(r):
        power = power * zeta
        sums.append(power.integer_part() * r)
    es = _newton_identities(sums, r)
    coeffs = [Series.const(Fraction(1))]
    for k, e in enumerate(es, start=1):
        coeffs.append(e if k % 2 == 0 else -e)
    # coeffs[k] multiplies zeta^{r-k}
    return UPoly(list(reversed(coeffs)))


def germ_equation(g: GermData) -> UPoly:
    """Reduced local equation F(zeta, z) of the germ: the product of the
    minimal polynomials of the unbounded clusters."""
    f = UPoly([Series.const(Fraction(1))])
    for c in g.branches:
        f = f * _cluster_min_poly(c)
    return f


def germ_milnor_oracle(g: GermData) -> int:
    """mu = (F, dF/dzeta) + 1 - (F, z), both intersection numbers as
    z-valuations; (F, z) is the branch multiplicity sum."""
    if g.r_c == 0:
        return 0
    f = germ_equation(g)
    fz = sum(c.r for c in g.branches)
    if f.degree == 1:
        res_val = Fraction(0)
    else:
        res = resultant_det(f, f.derivative())
        if not isinstance(res, Series):
            res = Series.const(res)
        res_val = res.valuation()
    mu = res_val + 1 - fz
    if Fraction(mu).denominator != 1 or mu < 0:
        raise InternalInconsistency(f"oracle Milnor number {mu} invalid")
    return int(mu)


def delta_invariant(g: GermData) -> int:
    """delta = (mu + r_C - 1) / 2, an integer for a reduced germ."""
    two_delta = g.mu + g.r_c - 1
    if two_delta % 2:
        raise InternalInconsistency(
            f"2*delta = {two_delta} is odd at pole {g.pole}")
    return two_delta // 2


def delta_identity_holds(g: GermData) -> bool:
    """2 delta - 2(n-1)(C, X_inf)_a == -delta(End) at this pole."""
    return (2 * g.delta - 2 * (g.n - 1) * g.local_inf
            == -delta_end(g.local))
