"""Exact Gaussian-rational scalars.

Every coefficient in this library is an element of Q(i): a complex number
whose real and imaginary parts are exact rationals.  All identities checked
by the verification suites are polynomial identities over this field, so
equality is always exact and never a tolerance question.

Rational arithmetic is backed by gmpy2.mpq when available (noticeably
faster on the composition-heavy suites) and falls back to
fractions.Fraction otherwise.  Both backends hash and compare identically.
"""

from __future__ import annotations

import math
from fractions import Fraction

try:
    from gmpy2 import mpq as MPQ
except ImportError:  # pragma: no cover
    MPQ = Fraction

_ZERO = MPQ(0)
_ONE = MPQ(1)


def _to_mpq(value):
    if isinstance(value, str):
        return MPQ(Fraction(value))
    return MPQ(value)


class NotASquare(ArithmeticError):
    """Raised when an exact square root does not exist in Q or Q(i)."""


def rational_sqrt(q):
    """Exact square root of a nonnegative rational, or raise NotASquare."""
    q = _to_mpq(q)
    if q < 0:
        raise NotASquare(f"{q} is negative")
    num, den = int(q.numerator), int(q.denominator)
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn != num or rd * rd != den:
        raise NotASquare(f"{q} is not a rational square")
    return MPQ(rn, rd)


class GaussianRational:
    """An element re + i*im of Q(i), with exact rational re and im."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _to_mpq(re)
        self.im = _to_mpq(im)

    @classmethod
    def _raw(cls, re, im):
        # internal fast path: arguments already backend rationals
        out = cls.__new__(cls)
        out.re = re
        out.im = im
        return out

    @classmethod
    def parse(cls, text):
        """Parse "3/2", "-1/3i", or "(3/2+1i)" style literals."""
        s = text.strip().replace(" ", "")
        if s.startswith("(") and s.endswith(")"):
            s = s[1:-1]
        if s.endswith(("i", "I", "j")):
            body = s[:-1]
            # split off an optional real part: a+bi / a-bi / bi
            for k in range(len(body) - 1, 0, -1):
                if body[k] in "+-" and body[k - 1] not in "+-/eE":
                    return cls(Fraction(body[:k]), Fraction(body[k:] or "1"))
            if body in ("", "+"):
                return cls(0, 1)
            if body == "-":
                return cls(0, -1)
            return cls(0, Fraction(body))
        return cls(Fraction(s), 0)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)) or type(other) is type(_ONE):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __add__(self, other):
        if type(other) is not GaussianRational:
            other = _coerce(other)
            if other is None:
                return NotImplemented
        return GaussianRational._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __sub__(self, other):
        if type(other) is not GaussianRational:
            other = _coerce(other)
            if other is None:
                return NotImplemented
        return GaussianRational._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if type(other) is not GaussianRational:
            other = _coerce(other)
            if other is None:
                return NotImplemented
        a, b = self.re, self.im
        c, d = other.re, other.im
        if not b and not d:
            return GaussianRational._raw(a * c, _ZERO)
        return GaussianRational._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self):
        if not self.im:
            if not self.re:
                raise ZeroDivisionError("division by zero in Q(i)")
            return GaussianRational._raw(1 / self.re, _ZERO)
        n = self.re * self.re + self.im * self.im
        return GaussianRational._raw(self.re / n, -self.im / n)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def sqrt(self):
        """Exact square root in Q(i), or raise NotASquare.

        For w = u + iv the root is found from u**2 - v**2 = re and
        2uv = im, which needs the norm re**2 + im**2 to be a rational
        square.
        """
        if not self.im:
            if self.re >= 0:
                return GaussianRational(rational_sqrt(self.re), 0)
            return GaussianRational(0, rational_sqrt(-self.re))
        norm_root = rational_sqrt(self.re * self.re + self.im * self.im)
        u2 = (self.re + norm_root) / 2
        u = rational_sqrt(u2)
        if not u:
            raise NotASquare(f"{self} is not a square in Q(i)")
        v = self.im / (2 * u)
        root = GaussianRational(u, v)
        if root * root != self:
            raise NotASquare(f"{self} is not a square in Q(i)")
        return root

    def __repr__(self):
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im >= 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"


def _coerce(value):
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)) or type(value) is type(_ONE):
        return GaussianRational(value, 0)
    return None


def grat(re=0, im=0):
    """Shorthand constructor for a GaussianRational."""
    if isinstance(re, GaussianRational) and not im:
        return re
    return GaussianRational(re, im)


ZERO = GaussianRational(0, 0)
ONE = GaussianRational(1, 0)
I = GaussianRational(0, 1)
HALF = GaussianRational(Fraction(1, 2), 0)
