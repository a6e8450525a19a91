"""Square matrices of rational functions: the global connection data.

Conventions: the equation is dw = A w with A a matrix of 1-forms A(z) dz.
Local charts: z_a = z - a at a finite point, w = 1/z at infinity, where the
1-form picks up the Jacobian A(z) dz = -A(1/w) w^{-2} dw.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InputError, UnsupportedPoleLocation, SpecrigError
from .qpoly import UPoly, det_cofactor
from .ratfn import RatFn, INFINITY, expand_at
from .series import Series


class MatRF:
    """n x n matrix of RatFn entries."""

    __slots__ = ("n", "entries")

    def __init__(self, entries):
        n = len(entries)
        if n < 1 or any(len(row) != n for row in entries):
            raise InputError("matrix must be square of size >= 1")
        self.n = n
        self.entries = [list(row) for row in entries]

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]

    def conjugate_by(self, p_rows):
        """P A P^{-1} for a constant invertible rational matrix P
        (list of lists of Fractions)."""
        n = self.n
        p = [[RatFn.const(c) for c in row] for row in p_rows]
        pinv = _invert_constant(p_rows)
        pa = _matmul(p, self.entries, n)
        return MatRF(_matmul(pa, pinv, n))


def _matmul(a, b, n):
    return [[sum((a[i][k] * b[k][j] for k in range(n)), RatFn.const(0))
             for j in range(n)] for i in range(n)]


def _invert_constant(rows):
    n = len(rows)
    aug = [[Fraction(rows[i][j]) for j in range(n)]
           + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise InputError("conjugating matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [c * inv for c in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [c - f * d for c, d in zip(aug[r], aug[col])]
    return [[RatFn.const(aug[i][n + j]) for j in range(n)] for i in range(n)]


def charpoly(m: MatRF) -> UPoly:
    """det(yI - M) as a monic UPoly in y with RatFn coefficients."""
    n = m.n
    y = UPoly([RatFn.const(0), RatFn.const(1)])
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            cell = UPoly([-m.entries[i][j]])
            if i == j:
                cell = cell + y
            row.append(cell)
        rows.append(row)
    det = det_cofactor(rows)
    return UPoly([c if isinstance(c, RatFn) else RatFn.const(c)
                  for c in det.coeffs])


def entry_form_valuation(f: RatFn, a):
    """Valuation at a of the 1-form f dz in the local coordinate
    (accounts for the w = 1/z Jacobian at infinity). None for f = 0."""
    v = f.valuation(a)
    if v is None:
        return None
    return v - 2 if a == INFINITY else v


def pole_order(m: MatRF, a) -> int:
    """nu = max(0, -min entry valuation) in the local chart at a."""
    worst = None
    for row in m.entries:
        for f in row:
            v = entry_form_valuation(f, a)
            if v is not None and (worst is None or v < worst):
                worst = v
    if worst is None:
        raise InputError("zero matrix has no local data")
    return max(0, -worst)


def localize(m: MatRF, a, nterms: int):
    """Truncated Laurent expansion of the connection matrix in the local
    coordinate at a; returns (matrix of Series, nu)."""
    if a != INFINITY:
        a = Fraction(a)
    nu = pole_order(m, a)
    out = []
    for row in m.entries:
        srow = []
        for f in row:
            s = expand_at(f, a, nterms)
            if a == INFINITY:
                s = (-s).shift(-2)
            srow.append(s)
        out.append(srow)
    return out, nu


def localize_charpoly(cp: UPoly, a, nterms: int):
    """Local expansion of the global characteristic polynomial's
    coefficients at a; returns a list of Series indexed by the power of y."""
    n = cp.degree
    out = []
    for j, c in enumerate(cp.coeffs):
        if not c:
            out.append(Series.zero())
            continue
        if a == INFINITY:
            s = expand_at(c, INFINITY, nterms).shift(-2 * (n - j))
            if (n - j) % 2:
                s = -s
        else:
            s = expand_at(c, a, nterms)
        out.append(s)
    return out


def validate_poles(m: MatRF, declared):
    """Check the declared pole set against the actual poles of A dz.

    Returns a list of warning strings; raises on undeclared or irrational
    poles. `declared` is a list of Fractions and/or INFINITY.
    """
    from .ratfn import ratfn_pole_points

    declared_set = set(declared)
    warnings = []
    actual = set()
    for row in m.entries:
        for f in row:
            if f.is_zero():
                continue
            pts, irr = ratfn_pole_points(f)
            if irr:
                raise UnsupportedPoleLocation(
                    "matrix entry has a pole at an irrational point "
                    f"(irreducible denominator factor of degree "
                    f"{irr[0][0].degree})")
            for pt, _ in pts:
                actual.add(pt)
    for pt in sorted(actual):
        if pt not in declared_set:
            raise InputError(f"undeclared pole at z = {pt}")
    v_inf = min((entry_form_valuation(f, INFINITY)
                 for row in m.entries for f in row
                 if not f.is_zero()), default=None)
    if v_inf is not None and v_inf < 0 and INFINITY not in declared_set:
        raise InputError("undeclared pole at infinity")
    for pt in declared:
        if pt == INFINITY:
            if v_inf is None or v_inf >= 0:
                warnings.append("declared pole at infinity is not a pole")
        elif pt not in actual:
            warnings.append(f"declared pole at z = {pt} is not a pole")
    return warnings


def default_truncation(n: int, nu_max: int) -> int:
    """Module-level floor for the expansion order."""
    return 2 * (n * nu_max + n * n + 4)
