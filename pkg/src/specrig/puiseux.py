"""Newton polygons and rational Puiseux expansions over field towers.

A cluster is one Galois orbit of Puiseux roots of a squarefree polynomial
F(y) with truncated Laurent-series coefficients: a representative expansion
with exponents in (1/r)Z plus the orbit size r.  Conjugates are implicit;
the automorphism xi acts on a term c z^e by the phase factor exp(2 pi i k e)
and is never materialized as an explicit root of unity.  Comparisons that
would depend on the choice of embedding raise AmbiguousComparison.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (AmbiguousComparison, InsufficientTruncation,
                     InternalInconsistency, SpecrigError)
from .qpoly import UPoly, resultant_det
from .series import INF, Series
from .tower import FieldTower, TowerElem


class Edge:
    """One lower-hull edge: root order rho = -slope, horizontal length,
    supporting points (i, leading coefficient)."""

    __slots__ = ("slope", "rho", "length", "i0", "points", "residual")

    def __init__(self, slope, length, i0, points, residual):
        self.slope = slope
        self.rho = -slope
        self.length = length
        self.i0 = i0
        self.points = points
        self.residual = residual


class NewtonPolygon:
    __slots__ = ("vertices", "edges", "zero_roots")

    def __init__(self, vertices, edges, zero_roots):
        self.vertices = vertices
        self.edges = edges  # sorted by increasing slope
        self.zero_roots = zero_roots


def newton_polygon(F: UPoly) -> NewtonPolygon:
    """Lower convex hull of {(i, val of coeff_i)} for F = sum coeff_i y^i.

    Coefficients are Series.  A coefficient that vanishes only up to its
    precision is allowed when the hull provably passes strictly below it;
    otherwise the polygon is not certified and we refuse.
    """
    known = {}
    unknown = {}
    wrapped = []
    for i, c in enumerate(F.coeffs):
        if not isinstance(c, Series):
            c = Series.const(c)
        wrapped.append(c)
        if c.is_zero():
            continue
        if c.known_zero_to_prec():
            unknown[i] = c.prec
            continue
        known[i] = c.valuation()
    if not known:
        raise SpecrigError("Newton polygon of a zero polynomial")
    i_min = min(known)
    if any(i < i_min for i in unknown):
        raise InsufficientTruncation(
            "low-order coefficient vanishes to precision; y-valuation "
            "undetermined")
    pts = sorted(known.items())
    hull = [pts[0]]
    for p in pts[1:]:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point when it is on or above the chord
            if (y2 - y1) * (p[0] - x1) >= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    def hull_val(x):
        for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
            if x1 <= x <= x2:
                return y1 + Fraction(y2 - y1, x2 - x1) * (x - x1)
        raise InternalInconsistency("hull query outside span")
    for i, prec in unknown.items():
        if i < hull[0][0] or i > hull[-1][0]:
            raise InternalInconsistency("unknown coefficient beyond hull span")
        if hull_val(i) >= prec:
            raise InsufficientTruncation(
                f"coefficient of y^{i} vanishes to precision {prec}, which "
                "does not clear the Newton polygon")
    edges = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        slope = Fraction(y2 - y1, x2 - x1)
        points = []
        for i in range(x1, x2 + 1):
            if i in known and known[i] == y1 + slope * (i - x1):
                points.append((i, wrapped[i].leading()))
        edges.append(Edge(slope, x2 - x1, x1, points,
                          _residual_full(points, x1)))
    return NewtonPolygon(hull, edges, i_min)


def _residual_full(points, i0):
    """Classical residual Phi(c) = sum of leading coefficients times
    c^(i - i0) over the edge's supporting points."""
    coeffs = [0] * (points[-1][0] - i0 + 1)
    for i, lead in points:
        coeffs[i - i0] = lead
    return UPoly(coeffs)


def _residual_compressed(points, i0, q):
    """Rational residual R(T) with T = c^q; defined because supporting
    points satisfy i = i0 mod q."""
    coeffs = [0] * ((points[-1][0] - i0) // q + 1)
    for i, lead in points:
        if (i - i0) % q:
            raise InternalInconsistency("edge point off the ramification "
                                        "lattice")
        coeffs[(i - i0) // q] = lead
    return UPoly(coeffs)


class PuiseuxCluster:
    """Galois orbit of roots: representative expansion + orbit size r."""

    __slots__ = ("rep", "r", "order", "tower")

    def __init__(self, rep: Series, r: int, tower: FieldTower):
        self.rep = rep
        self.r = r
        self.order = rep.valuation()  # INF sentinel for the exact zero root
        self.tower = tower

    def __repr__(self):
        return f"PuiseuxCluster(r={self.r}, order={self.order}, {self.rep!r})"


def _factor_key(p: UPoly):
    return (p.degree, str([str(c) for c in p.coeffs]))


def _any_root(tower: FieldTower, p: UPoly):
    """One root of p, adjoining a generator when p has no linear factor."""
    factors = sorted(tower.factor(tower.lift_poly(p, tower.height)),
                     key=lambda fk: _factor_key(fk[0]))
    for f, _ in factors:
        if f.degree == 1:
            return -f.coeffs[0] / f.coeffs[1]
    return tower.adjoin(factors[0][0])


def _all_roots(tower: FieldTower, p: UPoly):
    roots = tower.split_completely(p)
    return sorted(roots, key=lambda rm: str(rm[0]))


def discriminant_valuation(F: UPoly):
    """ord_z of disc_y(F) for monic F over Series; raises on a zero or
    precision-hidden discriminant."""
    if F.degree < 2:
        return Fraction(0)
    res = resultant_det(F, F.derivative())
    if not isinstance(res, Series):
        res = Series.const(res)
    if res.is_zero():
        raise SpecrigError("polynomial is not squarefree in y")
    return res.valuation()


def min_root_order(F: UPoly):
    poly = newton_polygon(F)
    if not poly.edges:
        return Fraction(0)
    return min(e.rho for e in poly.edges)


def default_target_depth(F: UPoly):
    """Separation depth: strictly exceeds every pairwise root contact.

    With monic squarefree F, ord disc = 2 * sum of contacts over unordered
    root pairs, and each contact is at least the minimal root order, so
    each contact is at most vdisc/2 - (pairs - 1) * minord.
    """
    n = F.degree
    if n < 2:
        return Fraction(1)
    vdisc = discriminant_valuation(F)
    minord = min_root_order(F)
    pairs = n * (n - 1) // 2
    bound = Fraction(vdisc, 2) - (pairs - 1) * min(minord, 0)
    return max(Fraction(0), bound) + 1


def puiseux_clusters(F: UPoly, tower: FieldTower = None,
                     target_depth=None, degree_bound: int = 4):
    """All Puiseux root clusters of monic squarefree F over Series.

    Returns (clusters, tower); sum of r over clusters = deg_y F.
    Expansions are carried past target_depth so that every pairwise
    contact valuation is decided.
    """
    if tower is None:
        tower = FieldTower(degree_bound)
    n = F.degree
    if n < 1:
        raise SpecrigError("need deg_y >= 1")
    if target_depth is None:
        target_depth = default_target_depth(F)
    target_depth = Fraction(target_depth)
    if n >= 2:
        discriminant_valuation(F)  # squarefree gate
    clusters = []
    _descend(F, {}, None, 1, n, tower, target_depth, clusters, 0)
    if sum(c.r for c in clusters) != n:
        raise InternalInconsistency("cluster sizes do not sum to the degree")
    return clusters, tower


def _descend(F, prev_terms, last_exp, lattice, mult, tower, target, out,
             depth_guard):
    if depth_guard > 10000:  # pragma: no cover
        raise InternalInconsistency("Puiseux recursion did not terminate")
    if mult == 1 and last_exp is not None and last_exp >= target:
        rep = Series(prev_terms, last_exp + Fraction(1, lattice))
        out.append(PuiseuxCluster(rep, lattice, tower))
        return
    poly = newton_polygon(F)
    live = [e for e in poly.edges if last_exp is None or e.rho > last_exp]
    zero_roots = poly.zero_roots
    if sum(e.length for e in live) + zero_roots != mult:
        raise InternalInconsistency(
            "edge lengths disagree with the root count being continued")
    if zero_roots:
        if zero_roots != 1:
            raise SpecrigError("polynomial is not squarefree in y "
                               "(repeated exact root)")
        out.append(PuiseuxCluster(Series(prev_terms), lattice, tower))
    for edge in sorted(live, key=lambda e: e.slope):
        rho = edge.rho
        d = rho.denominator
        new_lattice = _lcm(lattice, d)
        q = new_lattice // lattice
        residual = _residual_compressed(edge.points, edge.i0, q)
        for t, m in _all_roots(tower, residual):
            if q == 1:
                c = t
            else:
                xq = UPoly([-t] + [0] * (q - 1) + [tower.one(tower.height)])
                c = _any_root(tower, xq)
            term = Series.monomial(c, rho)
            arg = UPoly([term, Series.const(1)])
            F_next = F.compose(arg)
            nt = dict(prev_terms)
            nt[rho] = c
            _descend(F_next, nt, rho, new_lattice, m, tower, target, out,
                     depth_guard + 1)


def _lcm(a, b):
    g = a
    x = b
    while x:
        g, x = x, g % x
    return a * b // g


def branch_count(clusters) -> int:
    """Clusters whose branch passes through the germ point at infinity:
    representative root order strictly negative."""
    return sum(1 for c in clusters if c.order < 0)


# -- contact valuations ----------------------------------------------------

def _phase_denominator(k, e: Fraction) -> int:
    """Order of the phase exp(2 pi i k e) attached to a term z^e under
    the k-th power of the Puiseux automorphism."""
    f = (k * e) % 1
    return f.denominator


def _diff_nonzero(a, b, d: int) -> bool:
    """Decide a - zeta*b != 0 where zeta = exp(2 pi i f), f with
    denominator d in lowest terms (so zeta is a primitive d-th root of 1)."""
    if d == 1:
        return a != b
    if d == 2:
        return a != -b
    if not b:
        return bool(a)
    if not a:
        return True
    t = a / b if isinstance(a, TowerElem) or isinstance(b, TowerElem) \
        else Fraction(a) / Fraction(b)
    if t ** d != 1:
        return True
    if t == 1 or t == -1:
        # zeta is primitive of order d >= 3, never +-1
        return True
    raise AmbiguousComparison(
        "equality against a root of unity of order "
        f"{d} is not decided by the coefficient tower")


def cluster_contact(c1: PuiseuxCluster, c2: PuiseuxCluster, k: int):
    """Exact valuation of rep(c1) - xi^k(rep(c2))."""
    s1, s2 = c1.rep, c2.rep
    exps = sorted(set(s1.terms) | set(s2.terms))
    bound = INF
    if s1.prec is not None:
        bound = min(bound, s1.prec)
    if s2.prec is not None:
        bound = min(bound, s2.prec)
    for e in exps:
        if e >= bound:
            break
        a = s1.terms.get(e, 0)
        b = s2.terms.get(e, 0)
        if _diff_nonzero(a, b, _phase_denominator(k, e)):
            return e
    if bound == INF:
        if c1 is c2 and k % c1.r == 0:
            raise SpecrigError("contact of a root with itself is undefined")
        raise InternalInconsistency(
            "two exact expansions coincide; clusters are not separated")
    raise InsufficientTruncation(
        f"no contact found below precision {bound}")


def contact_pair_sum(clusters):
    """Sum of contact valuations over all ordered pairs of distinct roots.

    Equals ord_z disc_y(F_monic) for the polynomial the clusters came from.
    """
    total = Fraction(0)
    for i, ci in enumerate(clusters):
        for k in range(1, ci.r):
            total += ci.r * cluster_contact(ci, ci, k)
        for cj in clusters[i + 1:]:
            s = _lcm(ci.r, cj.r)
            weight = Fraction(ci.r * cj.r, s)
            for k in range(s):
                total += 2 * weight * cluster_contact(ci, cj, k)
    return total


def principal_contact_negative(c1, c2, k):
    """Valuation of the difference of principal parts q = z * root
    restricted to exponents < 0, or None when that difference vanishes.

    Exponent bookkeeping is on the root representatives: a root term z^e
    contributes z^(e+1) to q, so only e < -1 matters.
    """
    s1, s2 = c1.rep, c2.rep
    for e in sorted(set(s1.terms) | set(s2.terms)):
        if e >= -1:
            break
        a = s1.terms.get(e, 0)
        b = s2.terms.get(e, 0)
        if _diff_nonzero(a, b, _phase_denominator(k, e)):
            return e + 1
    return None
