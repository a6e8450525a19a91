"""Dense univariate polynomials over an exact coefficient field.

Coefficients may be ``fractions.Fraction``, tower elements
(:mod:`specrig.tower`), rational functions, or truncated series -- anything
supporting ``+ - * /``, ``bool`` (nonzero test) and mixing with ints.
The zero polynomial is the empty coefficient tuple.
"""

from __future__ import annotations

from fractions import Fraction

import sympy

from .errors import SpecrigError


class UPoly:
    """Polynomial a_0 + a_1 x + ... + a_d x^d as a coefficient tuple."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        coeffs = list(coeffs)
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @staticmethod
    def const(c):
        return UPoly([c])

    @staticmethod
    def x():
        return UPoly([0, 1])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def lc(self):
        if not self.coeffs:
            raise SpecrigError("leading coefficient of zero polynomial")
        return self.coeffs[-1]

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other):
        if not isinstance(other, UPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self):
        return UPoly([-c for c in self.coeffs])

    def __add__(self, other):
        if not isinstance(other, UPoly):
            other = UPoly.const(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UPoly(out)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, UPoly):
            other = UPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return UPoly.const(other) - self

    def __mul__(self, other):
        if not isinstance(other, UPoly):
            other = UPoly.const(other)
        if not self.coeffs or not other.coeffs:
            return UPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return UPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise SpecrigError("negative polynomial power")
        result = UPoly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c):
        return UPoly([a * c for a in self.coeffs])

    def shift_up(self, k):
        """Multiply by x^k."""
        if not self.coeffs:
            return self
        return UPoly([0] * k + list(self.coeffs))

    def divmod(self, other):
        """Quotient and remainder; requires invertible lc(other)."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UPoly(), self
        quot = [0] * (dq + 1)
        lead = other.lc()
        for k in range(dq, -1, -1):
            top = rem[k + other.degree]
            if not top:
                continue
            q = top / lead
            quot[k] = q
            for j, c in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - q * c
        return UPoly(quot), UPoly(rem)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def monic(self):
        if self.is_zero():
            return self
        lead = self.lc()
        return UPoly([c / lead for c in self.coeffs])

    def derivative(self):
        return UPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def eval(self, x0):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x0 + c
        return acc

    def compose(self, other):
        """self(other) for a polynomial argument."""
        acc = UPoly()
        for c in reversed(self.coeffs):
            acc = acc * other + UPoly.const(c)
        return acc

    def map_coeffs(self, fn):
        return UPoly([fn(c) for c in self.coeffs])

    def __repr__(self):
        return f"UPoly({list(self.coeffs)!r})"


def poly_gcd(f: UPoly, g: UPoly) -> UPoly:
    """Monic gcd over a field."""
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def poly_xgcd(f: UPoly, g: UPoly):
    """Extended gcd: returns (d, u, v) with u*f + v*g = d, d monic."""
    r0, r1 = f, g
    s0, s1 = UPoly([1]), UPoly()
    t0, t1 = UPoly(), UPoly([1])
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    lead = r0.lc()
    inv = 1 / lead
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def squarefree_part(f: UPoly) -> UPoly:
    if f.degree <= 0:
        return f.monic()
    return (f // poly_gcd(f, f.derivative())).monic()


def resultant(f: UPoly, g: UPoly):
    """Resultant over a field, by the Euclidean recurrence.

    Res(f, g) = lc(f)^{deg g} * prod g over roots of f (up to the usual
    sign convention baked into the recurrence).
    """
    if f.is_zero() and g.is_zero():
        raise SpecrigError("resultant of two zero polynomials")
    if f.is_zero() or g.is_zero():
        return _zero_like(f, g)
    if f.degree == 0:
        return f.lc() ** g.degree
    if g.degree == 0:
        return g.lc() ** f.degree
    r = f % g
    sign = -1 if (f.degree * g.degree) % 2 else 1
    if r.is_zero():
        return _zero_like(f, g)
    val = g.lc() ** (f.degree - r.degree) * resultant(g, r)
    return sign * val if sign < 0 else val


def _zero_like(f, g):
    for p in (f, g):
        if p.coeffs:
            return p.coeffs[-1] * 0
    return 0


def sylvester_matrix(f: UPoly, g: UPoly):
    """Sylvester matrix of f, g (both nonzero)."""
    m, n = f.degree, g.degree
    size = m + n
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(n):
        rows.append([0] * i + fc + [0] * (size - i - len(fc)))
    for i in range(m):
        rows.append([0] * i + gc + [0] * (size - i - len(gc)))
    return rows


def det_cofactor(rows):
    """Determinant by cofactor expansion; fine for the small sizes here.

    Works over any commutative ring (no divisions).
    """
    size = len(rows)
    if size == 0:
        return 1
    if size == 1:
        return rows[0][0]
    acc = None
    for j in range(size):
        a = rows[0][j]
        if not a:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = a * det_cofactor(minor)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc if acc is not None else rows[0][0] * 0


def resultant_det(f: UPoly, g: UPoly):
    """Resultant via the Sylvester determinant; valid over any ring."""
    if f.is_zero() and g.is_zero():
        raise SpecrigError("resultant of two zero polynomials")
    if f.is_zero() or g.is_zero():
        return _zero_like(f, g)
    if f.degree == 0:
        return f.lc() ** g.degree
    if g.degree == 0:
        return g.lc() ** f.degree
    return det_cofactor(sylvester_matrix(f, g))


def discriminant(f: UPoly):
    """(-1)^{d(d-1)/2} Res(f, f') / lc(f)."""
    d = f.degree
    if d < 1:
        raise SpecrigError("discriminant needs degree >= 1")
    res = resultant(f, f.derivative())
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    val = res / f.lc()
    return -val if sign < 0 else val


# -- rational-coefficient helpers (sympy-backed factorization) --------------

_X = sympy.Symbol("x")


def _to_sympy(f: UPoly):
    return sympy.Poly(list(reversed([sympy.Rational(c) for c in f.coeffs])), _X,
                      domain="QQ")


def _from_sympy(p) -> UPoly:
    return UPoly([Fraction(c.p, c.q) for c in reversed(p.all_coeffs())])


def factor_rational(f: UPoly):
    """Irreducible factorization over Q: list of (monic UPoly, multiplicity).

    All coefficients of f must be Fraction/int.
    """
    if f.degree < 1:
        return []
    _, factors = _to_sympy(f).factor_list()
    return [(_from_sympy(p).monic(), int(k)) for p, k in factors]


def rational_roots(f: UPoly):
    """Roots of f in Q with multiplicities, as (Fraction, int) pairs."""
    out = []
    for p, k in factor_rational(f):
        if p.degree == 1:
            out.append((Fraction(-p.coeffs[0]) / Fraction(p.coeffs[1]), k))
    return out


def is_irreducible_rational(f: UPoly) -> bool:
    if f.degree < 1:
        return False
    factors = factor_rational(f)
    return len(factors) == 1 and factors[0][1] == 1


QQ_ZERO = Fraction(0)
QQ_ONE = Fraction(1)
