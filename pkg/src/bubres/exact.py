"""Exact Gaussian-rational arithmetic.

A ``GRational`` is a complex number (a + b*i)/q with integer numerators a, b
and a common positive integer denominator q, stored fully reduced.  All
arithmetic is exact; nothing is ever rounded until ``to_complex`` is called.
This is the number type behind the exact Hankel-polynomial coefficients,
the Taylor expansion of the log-derivative ratio, and the Wronskian
identity checks, all of which must hold as identities rather than to a
floating tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd


@dataclass(frozen=True)
class GRational:
    """(re_num + im_num*i) / den with den > 0 and gcd(re_num, im_num, den) = 1."""

    re_num: int
    im_num: int
    den: int

    def __post_init__(self):
        if self.den == 0:
            raise ZeroDivisionError("GRational denominator is zero")
        a, b, q = self.re_num, self.im_num, self.den
        if q < 0:
            a, b, q = -a, -b, -q
        g = gcd(gcd(abs(a), abs(b)), q)
        if g > 1:
            a //= g
            b //= g
            q //= g
        object.__setattr__(self, "re_num", a)
        object.__setattr__(self, "im_num", b)
        object.__setattr__(self, "den", q)

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_int(n, m=0):
        return GRational(n, m, 1)

    @staticmethod
    def from_fractions(re, im=0):
        re = Fraction(re)
        im = Fraction(im)
        q = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        return GRational(re.numerator * (q // re.denominator),
                         im.numerator * (q // im.denominator), q)

    # -- predicates / views -------------------------------------------

    def is_zero(self):
        return self.re_num == 0 and self.im_num == 0

    def is_real(self):
        return self.im_num == 0

    @property
    def real(self):
        return Fraction(self.re_num, self.den)

    @property
    def imag(self):
        return Fraction(self.im_num, self.den)

    def to_complex(self):
        """Round to the nearest complex double (the only lossy operation);
        saturates to +-inf instead of raising when a component overflows."""
        return complex(_ratio_to_float(self.re_num, self.den),
                       _ratio_to_float(self.im_num, self.den))

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        return GRational(self.re_num * other.den + other.re_num * self.den,
                         self.im_num * other.den + other.im_num * self.den,
                         self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return GRational(-self.re_num, -self.im_num, self.den)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        a, b, c, d = self.re_num, self.im_num, other.re_num, other.im_num
        return GRational(a * c - b * d, a * d + b * c, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero GRational")
        c, d = other.re_num, other.im_num
        a, b = self.re_num, self.im_num
        # (a+bi)/q / ((c+di)/s) = s (a+bi)(c-di) / (q (c^2+d^2))
        return GRational(other.den * (a * c + b * d),
                         other.den * (b * c - a * d),
                         self.den * (c * c + d * d))

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def conjugate(self):
        return GRational(self.re_num, -self.im_num, self.den)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __repr__(self):
        return f"({self.re_num}{self.im_num:+d}i)/{self.den}"


def _ratio_to_float(n, d):
    try:
        return n / d
    except OverflowError:
        return math.copysign(math.inf, float(n > 0) - 0.5)


def _coerce(x):
    if isinstance(x, GRational):
        return x
    if isinstance(x, int):
        return GRational(x, 0, 1)
    if isinstance(x, Fraction):
        return GRational(x.numerator, 0, x.denominator)
    raise TypeError(f"cannot coerce {type(x).__name__} to GRational")


ZERO = GRational(0, 0, 1)
ONE = GRational(1, 0, 1)
I = GRational(0, 1, 1)
