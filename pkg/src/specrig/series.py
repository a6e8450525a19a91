"""Sparse truncated Puiseux/Laurent series with exact rational exponents.

A series is a finite map {exponent: coefficient} plus a precision bound:
coefficients at exponents < prec are exactly known, everything at or above
prec is unknown. prec = None means the series is exact (a Laurent
polynomial in some z^(1/r)). Coefficients live in Q or a field tower.

Any query that would need a coefficient beyond prec raises
InsufficientTruncation rather than returning a guess.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InsufficientTruncation, SpecrigError

INF = Fraction(10 ** 12)  # sentinel used only in internal min/max bookkeeping


def _fr(e):
    return e if isinstance(e, Fraction) else Fraction(e)


class Series:
    """Sparse series sum_e c_e z^e, exponents Fraction, with precision."""

    __slots__ = ("terms", "prec")

    def __init__(self, terms=None, prec=None):
        clean = {}
        p = None if prec is None else _fr(prec)
        for e, c in (terms or {}).items():
            e = _fr(e)
            if not c:
                continue
            if p is not None and e >= p:
                continue
            clean[e] = c
        self.terms = clean
        self.prec = p

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(prec=None):
        return Series({}, prec)

    @staticmethod
    def monomial(coeff, exp, prec=None):
        return Series({_fr(exp): coeff}, prec)

    @staticmethod
    def const(c, prec=None):
        return Series({Fraction(0): c}, prec)

    # -- predicates -----------------------------------------------------

    def is_exact(self):
        return self.prec is None

    def is_zero(self):
        """True only when provably zero (exact and empty)."""
        return not self.terms and self.prec is None

    def known_zero_to_prec(self):
        return not self.terms

    def support(self):
        return sorted(self.terms)

    def low(self):
        """Lower bound for the valuation (min of support and prec)."""
        vals = list(self.terms)
        if self.prec is not None:
            vals.append(self.prec)
        return min(vals) if vals else INF

    def valuation(self):
        """Exact order of the series; +INF sentinel for exact zero."""
        if self.terms:
            return min(self.terms)
        if self.prec is None:
            return INF
        raise InsufficientTruncation(
            f"series vanishes to its precision {self.prec}; valuation unknown")

    def coeff(self, e):
        e = _fr(e)
        if self.prec is not None and e >= self.prec:
            raise InsufficientTruncation(
                f"coefficient at {e} beyond precision {self.prec}")
        return self.terms.get(e, 0)

    def leading(self):
        v = self.valuation()
        if v == INF:
            raise SpecrigError("leading coefficient of zero series")
        return self.terms[v]

    def denominator_lcm(self):
        """lcm of exponent denominators over the support (1 if empty)."""
        d = 1
        for e in self.terms:
            d = d * e.denominator // _gcd(d, e.denominator)
        return d

    # -- arithmetic -------------------------------------------------------

    def _minprec(self, other):
        if self.prec is None:
            return other.prec
        if other.prec is None:
            return self.prec
        return min(self.prec, other.prec)

    def __add__(self, other):
        if not isinstance(other, Series):
            other = Series.const(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return Series(terms, self._minprec(other))

    __radd__ = __add__

    def __neg__(self):
        return Series({e: -c for e, c in self.terms.items()}, self.prec)

    def __sub__(self, other):
        if not isinstance(other, Series):
            other = Series.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return Series.const(other) - self

    def __mul__(self, other):
        if not isinstance(other, Series):
            other = Series.const(other)
        precs = []
        if self.prec is not None:
            precs.append(self.prec + other.low())
        if other.prec is not None:
            precs.append(other.prec + self.low())
        prec = min(precs) if precs else None
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                terms[e] = terms.get(e, 0) + c1 * c2
        return Series(terms, prec)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = Series.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, e):
        """Multiply by z^e."""
        e = _fr(e)
        return Series({k + e: c for k, c in self.terms.items()},
                      None if self.prec is None else self.prec + e)

    def scale_exponents(self, factor):
        """Substitute z -> z^factor (factor a positive rational)."""
        factor = _fr(factor)
        if factor <= 0:
            raise SpecrigError("exponent scale must be positive")
        return Series({k * factor: c for k, c in self.terms.items()},
                      None if self.prec is None else self.prec * factor)

    def truncate(self, prec):
        prec = _fr(prec)
        if self.prec is not None and self.prec < prec:
            raise InsufficientTruncation(
                f"cannot extend precision {self.prec} to {prec}")
        return Series(self.terms, prec)

    def inverse(self, order=None):
        """Multiplicative inverse. For a non-exact or non-monomial series
        the result is truncated; order caps the number of correction terms."""
        v = self.valuation()
        if v == INF:
            raise ZeroDivisionError("inverse of zero series")
        c0 = self.terms[v]
        if len(self.terms) == 1 and self.prec is None:
            return Series.monomial(1 / c0, -v)
        # write self = c0 z^v (1 + u), invert the unit by geometric series
        u = Series({e - v: c / c0 for e, c in self.terms.items() if e != v},
                   None if self.prec is None else self.prec - v)
        if u.prec is not None:
            gap = u.low()
            bound = u.prec
        else:
            gap = min(u.terms) if u.terms else INF
            bound = _fr(order) if order is not None else None
            if bound is None:
                raise SpecrigError(
                    "inverse of an exact multi-term series needs an order")
        acc = Series.const(1, bound)
        if u.terms:
            powu = Series.const(1, bound)
            k = 0
            while k * gap < bound:
                k += 1
                powu = (powu * u).truncate(bound)
                if k % 2:
                    acc = acc - powu
                else:
                    acc = acc + powu
                if powu.known_zero_to_prec():
                    break
        return acc.shift(-v) * Series.const(1 / c0)

    def __truediv__(self, other):
        if not isinstance(other, Series):
            other = Series.const(other)
        return self * other.inverse()

    def __bool__(self):
        # nonzero as far as we can see; exact-zero is falsy
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Series):
            other = Series.const(other)
        return self.terms == other.terms and self.prec == other.prec

    def map_coeffs(self, fn):
        return Series({e: fn(c) for e, c in self.terms.items()}, self.prec)

    def integer_part(self):
        """Terms with integer exponents only (same precision)."""
        return Series({e: c for e, c in self.terms.items()
                       if e.denominator == 1}, self.prec)

    def nonpositive_part(self):
        """Exact Laurent polynomial of terms with exponent <= 0."""
        if self.prec is not None and self.prec <= 0:
            raise InsufficientTruncation(
                "principal part not certified: precision <= 0")
        return Series({e: c for e, c in self.terms.items() if e <= 0})

    def negative_part(self):
        if self.prec is not None and self.prec <= 0:
            raise InsufficientTruncation(
                "principal part not certified: precision <= 0")
        return Series({e: c for e, c in self.terms.items() if e < 0})

    def __repr__(self):
        body = " + ".join(f"({c!r})*z^{e}" for e, c in sorted(self.terms.items()))
        tail = "" if self.prec is None else f" + O(z^{self.prec})"
        return (body or "0") + tail


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a
