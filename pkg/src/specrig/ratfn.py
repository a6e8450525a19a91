"""Rational functions in one variable over Q, reduced with monic denominator.

Also provides exact local data: valuation at a rational point or at
infinity, and truncated Laurent expansion into :class:`specrig.series.Series`.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import SpecrigError
from .qpoly import UPoly, poly_gcd
from .series import Series

INFINITY = "inf"  # token for the point at infinity


class RatFn:
    """num/den with gcd(num, den) = 1 and den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: UPoly, den: UPoly = None):
        if den is None:
            den = UPoly([Fraction(1)])
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = UPoly(), UPoly([Fraction(1)])
        else:
            g = poly_gcd(num, den)
            if g.degree >= 1:
                num, den = num // g, den // g
            lead = den.lc()
            num = num.scale(1 / lead)
            den = den.scale(1 / lead)
        self.num = num
        self.den = den

    @staticmethod
    def const(c):
        return RatFn(UPoly([Fraction(c)]))

    @staticmethod
    def var():
        return RatFn(UPoly([Fraction(0), Fraction(1)]))

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFn.const(other)
        if not isinstance(other, RatFn):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFn.const(other)
        return RatFn(self.num * other.den + other.num * self.den,
                     self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFn(-self.num, self.den)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFn.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return RatFn.const(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFn.const(other)
        return RatFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFn.const(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFn(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RatFn.const(other) / self

    def __pow__(self, n):
        if n < 0:
            return (RatFn.const(1) / self) ** (-n)
        result = RatFn.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def eval(self, x0):
        d = self.den.eval(x0)
        if not d:
            raise ZeroDivisionError("evaluation at a pole")
        return self.num.eval(x0) / d

    # -- local data ------------------------------------------------------

    def valuation(self, a):
        """Order of vanishing at a rational point a or at INFINITY.

        Returns None for the zero function (order +infinity).
        """
        if self.is_zero():
            return None
        if a == INFINITY:
            return self.den.degree - self.num.degree
        a = Fraction(a)
        return _root_order(self.num, a) - _root_order(self.den, a)

    def at_infinity(self) -> "RatFn":
        """Substitute z = 1/w; returns a rational function of w."""
        n, d = self.num, self.den
        dn, dd = n.degree, d.degree
        rn = UPoly(list(reversed(n.coeffs)))
        rd = UPoly(list(reversed(d.coeffs)))
        # f(1/w) = w^{dd-dn} * rn(w)/rd(w)
        if dd >= dn:
            return RatFn(rn.shift_up(dd - dn), rd)
        return RatFn(rn, rd.shift_up(dn - dd))

    def shifted(self, a) -> "RatFn":
        """Substitute z = w + a (local coordinate w = z - a)."""
        a = Fraction(a)
        arg = UPoly([a, Fraction(1)])
        return RatFn(self.num.compose(arg), self.den.compose(arg))

    def expand_local(self, nterms: int) -> Series:
        """Laurent expansion at 0 with nterms certified coefficient orders
        past the leading one."""
        if self.is_zero():
            return Series.zero()
        vn = _root_order_zero(self.num)
        vd = _root_order_zero(self.den)
        v = vn - vd
        num = UPoly(self.num.coeffs[vn:])
        den = UPoly(self.den.coeffs[vd:])
        # power series division num/den to nterms coefficients
        inv_d0 = 1 / den.coeffs[0]
        out = []
        rem = list(num.coeffs) + [Fraction(0)] * nterms
        for k in range(nterms):
            c = rem[k] * inv_d0
            out.append(c)
            if c:
                for j in range(1, min(len(den.coeffs), nterms - k)):
                    rem[k + j] -= c * den.coeffs[j]
        exact = self.den.degree == vd and len(self.num.coeffs) - vn <= nterms
        prec = None if exact else Fraction(v + nterms)
        return Series({Fraction(v + i): c for i, c in enumerate(out) if c},
                      prec)

    def __repr__(self):
        return f"RatFn({list(self.num.coeffs)}, {list(self.den.coeffs)})"


def _root_order(p: UPoly, a) -> int:
    k = 0
    while p.degree >= 0 and not p.eval(a):
        p = p // UPoly([-a, Fraction(1)])
        k += 1
    return k


def _root_order_zero(p: UPoly) -> int:
    k = 0
    while k <= p.degree and not p.coeffs[k]:
        k += 1
    return k


def ratfn_pole_points(f: RatFn):
    """Rational roots of the denominator with multiplicities; raises on
    irrational denominator factors (handled by the caller)."""
    from .qpoly import factor_rational
    out = []
    irrational = []
    for p, k in factor_rational(f.den):
        if p.degree == 1:
            out.append((-p.coeffs[0] / p.coeffs[1], k))
        else:
            irrational.append((p, k))
    return out, irrational


def expand_at(f: RatFn, a, nterms: int) -> Series:
    """Laurent expansion of f in the local coordinate at a (or w = 1/z at
    INFINITY). No 1-form twist here; plain function expansion."""
    if a == INFINITY:
        return f.at_infinity().expand_local(nterms)
    return f.shifted(a).expand_local(nterms)
