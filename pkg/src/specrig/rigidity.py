"""Global invariants: curve class, genus, Euler characteristic, rigidity.

The spectral curve of a rank-n system on the projective line has class
n X_0 + b f with b the total intersection with the infinity divisor; its
arithmetic genus, the Euler characteristic of the normalization, and the
Euler-Poincare rigidity index must satisfy rig = chi whenever the curve is
irreducible and smooth away from infinity.
"""

from __future__ import annotations

from fractions import Fraction

import sympy

from .errors import InternalInconsistency, SpecrigError
from .germs import GermData
from .localmod import LocalModule, delta_end
from .qpoly import UPoly, factor_rational, poly_gcd, resultant_det, \
    squarefree_part
from .ratfn import RatFn
from .tower import FieldTower


class CurveClass:
    """Neron-Severi data C = n X_0 + b f over a genus-g base."""

    __slots__ = ("n", "b", "g")

    def __init__(self, n: int, b: int, g: int = 0):
        if n < 1 or b < 0:
            raise SpecrigError("curve class needs n >= 1 and b >= 0")
        self.n = n
        self.b = b
        self.g = g


def total_inf_intersection(germs) -> int:
    return sum(g.local_inf for g in germs)


def arithmetic_genus(c: CurveClass, spectral: bool = True):
    """g_a = (n^2 (2g - 2) + (2n - 2) b) / 2 + 1."""
    val = Fraction(c.n ** 2 * (2 * c.g - 2) + (2 * c.n - 2) * c.b, 2) + 1
    if spectral:
        if val.denominator != 1:
            raise InternalInconsistency(
                f"arithmetic genus {val} of a spectral curve class is "
                "not an integer")
        return int(val)
    return val


def euler_char_normalization(g_a: int, germs) -> int:
    """chi of the normalization: (2 - 2 g_a) + 2 * sum of delta."""
    return 2 - 2 * g_a + 2 * sum(g.delta for g in germs)


def rigidity_index(locals_, g: int = 0) -> int:
    """rig = (2 - 2g) n^2 - sum over poles of delta(End)."""
    n = locals_[0].n
    return (2 - 2 * g) * n * n - sum(delta_end(L) for L in locals_)


def verify_milnor_per_pole(local: LocalModule, germ: GermData) -> bool:
    """mu (by the independent resultant oracle) must equal
    -delta(End) - r_C + 2(n-1)(C, X_inf)_a + 1."""
    n = local.n
    rhs = (-delta_end(local) - germ.r_c
           + 2 * (n - 1) * germ.local_inf + 1)
    return germ.mu_oracle_value == rhs and germ.mu == germ.mu_oracle_value


def cohomology_dims(rig: int):
    """(h^0, h^1, h^2) = (1, 2 - rig, 1) for an irreducible connection."""
    return (1, 2 - rig, 1)


# -- bivariate helpers -------------------------------------------------------

def cleared_charpoly(cp: UPoly):
    """Multiply through by the denominator lcm: returns (F, D) with F a
    polynomial in y whose coefficients are polynomials in z, and D(z) the
    clearing factor (vanishing only at poles)."""
    den = UPoly([Fraction(1)])
    for c in cp.coeffs:
        if isinstance(c, RatFn) and not c.is_zero():
            g = poly_gcd(den, c.den)
            den = den * (c.den // g)
    out = []
    for c in cp.coeffs:
        if not c or (isinstance(c, RatFn) and c.is_zero()):
            out.append(UPoly())
        else:
            out.append(c.num * (den // c.den))
    return UPoly(out), den


_Y, _Z = sympy.symbols("y z")


def _bipoly_to_sympy(f: UPoly):
    expr = sympy.Integer(0)
    for i, cz in enumerate(f.coeffs):
        if cz.is_zero():
            continue
        for j, c in enumerate(cz.coeffs):
            if c:
                expr += sympy.Rational(c) * _Y ** i * _Z ** j
    return sympy.Poly(expr, _Y, _Z, domain="QQ")


def irreducibility_status(cp: UPoly, locals_) -> str:
    """Tri-state: a totally ramified place certifies irreducibility; a
    rational-function-field factorization certifies reducibility;
    otherwise unknown."""
    for L in locals_:
        if len(L.cells) == 1 and L.cells[0].r == L.n:
            return "irreducible"
    f, _ = cleared_charpoly(cp)
    _, factors = _bipoly_to_sympy(f).factor_list()
    ydeg_factors = sum(k for p, k in factors if p.degree(_Y) >= 1)
    if ydeg_factors > 1:
        return "reducible"
    return "unknown"


def smoothness_check_finite_part(cp: UPoly, declared_poles,
                                 degree_bound: int = 4):
    """Singular points of the spectral curve away from the poles.

    Returns (status, detail): status 'ok', 'singular', or 'indeterminate'.
    """
    f, den = cleared_charpoly(cp)
    if f.degree < 1:
        raise SpecrigError("characteristic polynomial has no y degree")
    fy = f.derivative()
    fz = f.map_coeffs(lambda c: c.derivative())
    if f.degree == 0:
        return "ok", None
    s = resultant_det(f, fy) if f.degree >= 1 and not fy.is_zero() \
        else UPoly()
    if not isinstance(s, UPoly):
        s = UPoly.const(s)
    if s.is_zero():
        return "indeterminate", "discriminant vanishes identically"
    declared = {p for p in declared_poles if p != "inf"}
    for pi, _k in factor_rational(squarefree_part(s)):
        if pi.degree == 1:
            z0 = -Fraction(pi.coeffs[0]) / Fraction(pi.coeffs[1])
            if z0 in declared or not den.eval(z0):
                continue
            if _common_root_at(f, fy, fz, z0):
                return "singular", f"singular point over z = {z0}"
        else:
            if pi.degree > degree_bound:
                return ("indeterminate",
                        f"discriminant factor of degree {pi.degree} "
                        "exceeds the extension bound")
            tower = FieldTower(degree_bound)
            alpha = tower.adjoin(pi)
            if _common_root_at(f, fy, fz, alpha):
                return ("singular",
                        "singular point over an irrational zero of the "
                        f"discriminant (degree {pi.degree} factor)")
    return "ok", None


def _common_root_at(f, fy, fz, z0):
    fv = UPoly([c.eval(z0) for c in f.coeffs])
    fyv = UPoly([c.eval(z0) for c in fy.coeffs])
    fzv = UPoly([c.eval(z0) for c in fz.coeffs])
    g = poly_gcd(poly_gcd(fv, fyv), fzv)
    return g.degree >= 1


class GlobalReport:
    """Aggregated result of one analysis run."""

    __slots__ = ("n", "genus", "poles", "locals", "germs", "curve",
                 "g_a", "delta_sum", "chi", "rig", "hdims",
                 "milnor_ok", "delta_identity_ok", "main_theorem",
                 "irreducibility", "smoothness", "warnings")

    def __init__(self):
        self.warnings = []
        self.hdims = None
        self.main_theorem = None
