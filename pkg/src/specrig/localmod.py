"""Per-pole differential-module data: HTL cells and irregularities.

Each Puiseux cluster of the local characteristic polynomial gives one cell:
q is the strictly negative exponent part of z * (representative root),
r the ramification, p = -r * ord(q).  Formulas below require the local
normal form to be multiplicity free or regular semisimple; anything else
is reported as an assumption violation, never silently computed.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (AmbiguousComparison, InsufficientTruncation,
                     InternalInconsistency, NotRegularSemisimple,
                     ReductionUnavailable, SpecrigError)
from .matrf import (MatRF, charpoly, default_truncation, localize,
                    localize_charpoly, pole_order)
from .puiseux import (PuiseuxCluster, _diff_nonzero, _lcm,
                      _phase_denominator, contact_pair_sum,
                      discriminant_valuation, principal_contact_negative,
                      puiseux_clusters)
from .qpoly import UPoly
from .series import Series
from .tower import FieldTower, TowerElem


class HTLCell:
    """One formal exponential cell: principal part q, orbit size r."""

    __slots__ = ("q", "r", "p", "cluster", "residue")

    def __init__(self, cluster: PuiseuxCluster):
        rep = cluster.rep
        q = Series({e + 1: c for e, c in rep.terms.items() if e < -1})
        self.q = q
        self.r = cluster.r
        ordq = min(q.terms) if q.terms else None
        self.p = 0 if ordq is None else int(-cluster.r * ordq)
        self.cluster = cluster
        self.residue = None  # filled by the reduction cross-check

    @property
    def is_regular(self):
        return self.p == 0

    def __repr__(self):
        return f"HTLCell(p={self.p}, r={self.r}, q={self.q!r})"


class LocalModule:
    """All per-pole data needed by the invariant formulas."""

    __slots__ = ("pole", "n", "nu", "cells", "clusters", "tower",
                 "local_charpoly", "local_matrix", "mode", "violation",
                 "warnings", "nterms")

    def __init__(self, pole, n, nu, cells, clusters, tower, local_charpoly,
                 local_matrix, nterms):
        self.pole = pole
        self.n = n
        self.nu = nu
        self.cells = cells
        self.clusters = clusters
        self.tower = tower
        self.local_charpoly = local_charpoly
        self.local_matrix = local_matrix
        self.nterms = nterms
        self.mode = None
        self.violation = None
        self.warnings = []

    @property
    def m(self):
        return len(self.cells)


def build_local(a_mat: MatRF, a, nterms=None, degree_bound: int = 4,
                cp=None) -> LocalModule:
    """Localize, expand, cluster; retries at doubled truncation when a
    series is consulted past its certified order."""
    n = a_mat.n
    if cp is None:
        cp = charpoly(a_mat)
    nu = pole_order(a_mat, a)
    if nterms is None:
        nterms = default_truncation(n, nu)
    last = None
    for attempt in range(4):
        try:
            return _build_local_once(a_mat, a, cp, n, nu, nterms,
                                     degree_bound)
        except InsufficientTruncation as exc:
            last = exc
            nterms *= 2
    raise last


def _build_local_once(a_mat, a, cp, n, nu, nterms, degree_bound):
    coeffs = localize_charpoly(cp, a, nterms)
    f_local = UPoly(coeffs)
    g_local, _ = localize(a_mat, a, nterms)
    clusters, tower = puiseux_clusters(f_local, degree_bound=degree_bound)
    cells = [HTLCell(c) for c in clusters]
    cells.sort(key=lambda c: (-Fraction(c.p, c.r), str(sorted(
        (str(e), str(v)) for e, v in c.q.terms.items()))))
    return LocalModule(a, n, nu, cells, [c.cluster for c in cells], tower,
                       f_local, g_local, nterms)


# -- assumption check --------------------------------------------------------

def _cells_same_orbit(ci: HTLCell, cj: HTLCell) -> bool:
    """True when the principal parts lie in one Galois orbit: some
    conjugate of q_j equals q_i."""
    for k in range(_lcm(ci.r, cj.r)):
        if principal_contact_negative(ci.cluster, cj.cluster, k) is None:
            return True
    return False


def check_assumption(local: LocalModule) -> bool:
    """Multiplicity-free or regular-semisimple gate.

    Sets local.mode and, on failure, local.violation; returns ok flag.
    """
    cells = local.cells
    regular = [c for c in cells if c.is_regular]
    mf_ok = True
    reason = None
    for c in regular:
        if c.r != 1:
            mf_ok = False
            reason = (f"a regular cell (q = 0) has ramification {c.r}: "
                      "a multiplicity-" f"{c.r} cell")
    if len(regular) > 1:
        mf_ok = False
        reason = f"{len(regular)} regular cells (q = 0) coincide"
    if mf_ok:
        for i in range(len(cells)):
            for j in range(i + 1, len(cells)):
                if cells[i].is_regular and cells[j].is_regular:
                    continue
                if _cells_same_orbit(cells[i], cells[j]):
                    mf_ok = False
                    reason = ("two cells share the same exponential "
                              "principal part")
    if mf_ok:
        local.mode = "multiplicity-free"
        return True
    # regular-semisimple fallback: all cells unramified and the reduction
    # certificate produces pairwise distinct diagonal normal forms
    if all(c.r == 1 for c in cells) and len(cells) == local.n:
        try:
            ok = reduction_cross_check(local)
        except (NotRegularSemisimple, ReductionUnavailable):
            ok = False
        if ok:
            forms = [(tuple(sorted(c.q.terms.items(), key=lambda t: t[0])),
                      c.residue) for c in cells]
            if len(set(map(str, forms))) == len(forms):
                local.mode = "regular-semisimple"
                return True
            reason = "diagonal normal forms are not pairwise distinct"
    local.mode = None
    local.violation = reason or "neither multiplicity free nor regular " \
                                "semisimple"
    return False


def reduction_cross_check(local: LocalModule) -> bool:
    """Recompute the HTL cells by pullback + block splitting and match
    them against the Puiseux-route cells; fills cell residues.

    Returns True on agreement; raises InternalInconsistency on mismatch
    and ReductionUnavailable when the split route cannot run.
    """
    from .splitting import htl_from_reduction
    s = 1
    for c in local.cells:
        s = _lcm(s, c.r)
    try:
        red = htl_from_reduction(local.local_matrix, s, local.tower)
    except NotRegularSemisimple as exc:
        raise ReductionUnavailable(str(exc))
    matched = [0] * len(local.cells)
    for q_red, residue in red:
        hit = None
        for idx, cell in enumerate(local.cells):
            if matched[idx] >= cell.r:
                continue
            if _principal_parts_equal_some_conjugate(q_red, cell):
                hit = idx
                break
        if hit is None:
            raise InternalInconsistency(
                "reduction produced a principal part with no matching "
                "Puiseux cell")
        matched[hit] += 1
        if local.cells[hit].r == 1:
            local.cells[hit].residue = residue
    if matched != [c.r for c in local.cells]:
        raise InternalInconsistency(
            "reduction blocks do not cover each cell exactly r times")
    return True


def _principal_parts_equal_some_conjugate(q_red: Series, cell: HTLCell):
    qc = cell.q
    for k in range(cell.r):
        same = True
        for e in sorted(set(q_red.terms) | set(qc.terms)):
            a = q_red.terms.get(e, 0)
            b = qc.terms.get(e, 0)
            if _diff_nonzero(a, b, _phase_denominator(k, e)):
                same = False
                break
        if same:
            return True
    return False


# -- irregularity ------------------------------------------------------------

def irregularity(local: LocalModule) -> int:
    return sum(c.p for c in local.cells)


def irr_hom(ci: HTLCell, cj: HTLCell) -> int:
    """-sum over conjugate pairs of min(0, ord(xi^k q_i - xi^l q_j)).

    For i = j only the r(r-1) pairs with k != l contribute.
    """
    if ci is cj:
        total = Fraction(0)
        for k in range(1, ci.r):
            v = principal_contact_negative(ci.cluster, ci.cluster, k)
            if v is not None:
                total += -v * ci.r
        return _as_int(total)
    s = _lcm(ci.r, cj.r)
    weight = Fraction(ci.r * cj.r, s)
    total = Fraction(0)
    for k in range(s):
        v = principal_contact_negative(ci.cluster, cj.cluster, k)
        if v is not None:
            total += -v * weight
    return _as_int(total)


def _as_int(x) -> int:
    x = Fraction(x)
    if x.denominator != 1:
        raise InternalInconsistency(f"irregularity {x} is not an integer")
    return int(x)


def irr_end(local: LocalModule) -> int:
    cells = local.cells
    total = 0
    for i, ci in enumerate(cells):
        total += irr_hom(ci, ci)
        for cj in cells[i + 1:]:
            total += 2 * irr_hom(ci, cj)
    return total


def hor_dim(local: LocalModule) -> int:
    """Dimension of formal horizontal endomorphism solutions: the cell
    count, by Schur's lemma for pairwise distinct cells.  In the
    regular-semisimple mode, integer-resonant exponent residues are
    flagged because the Schur argument does not cover them."""
    if local.mode == "regular-semisimple":
        cells = local.cells
        for i, ci in enumerate(cells):
            for cj in cells[i + 1:]:
                if ci.q.terms or cj.q.terms:
                    continue
                d = _rational_difference(ci.residue, cj.residue)
                if d is not None and d != 0 and d.denominator == 1:
                    msg = (f"resonant exponent residues at pole "
                           f"{local.pole}: horizontal dimension may "
                           "overcount; dependent results unverified")
                    if msg not in local.warnings:
                        local.warnings.append(msg)
    return local.m


def _rational_difference(a, b):
    if a is None or b is None:
        return None
    d = a - b
    if isinstance(d, Fraction):
        return d
    if isinstance(d, TowerElem):
        if not d.coeffs:
            return Fraction(0)
        if len(d.coeffs) == 1:
            return _rational_difference(d.coeffs[0], 0)
    return None


def delta_end(local: LocalModule) -> int:
    """Local Euler-Poincare term of End(M): n^2 + Irr(End) - hor_dim."""
    return local.n ** 2 + irr_end(local) - hor_dim(local)


def discriminant_identity_holds(local: LocalModule) -> bool:
    """2 * sum of pairwise root contacts == ord_z disc_y of the local
    characteristic polynomial (the independent valuation oracle)."""
    if local.n < 2:
        return True
    vdisc = discriminant_valuation(local.local_charpoly)
    return contact_pair_sum(local.clusters) == vdisc
