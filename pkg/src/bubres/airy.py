"""Airy function Ai, its derivative, and their real negative zeros.

Values come from the two-series Maclaurin representation

    Ai(x) = Ai(0) f(x) + Ai'(0) g(x),   f'' = x f,  g'' = x g,

summed in exact rational arithmetic on the exact binary value of the float
argument and rounded once at the end.  Plain double summation loses about
twelve digits to alternating-term cancellation near the x = -12 edge of the
usable window, which would break the advertised 1e-12 absolute accuracy;
exact summation makes the only error the final rounding.

Zeros are seeded from the classical asymptotics

    eta_s  ~ -[3 pi (4s-1)/8]^(2/3),    eta'_s ~ -[3 pi (4s-3)/8]^(2/3)

and refined by Newton whenever the seed lies inside the series window; a
source flag records which path produced each value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

# Window |x| <= SERIES_WINDOW where the exact Maclaurin sum is used.
SERIES_WINDOW = 12.0

_REFINED_ABS = 1e-10  # |Ai| (or |Ai'|) required of a refined zero

_PI_50 = Fraction(314159265358979323846264338327950288419716939937510, 10 ** 50)


def _fraction_sqrt(q, digits=60):
    scale = 10 ** digits
    return Fraction(isqrt(q.numerator * q.denominator * scale * scale), q.denominator * scale)


@lru_cache(maxsize=1)
def _airy_constants():
    """Ai(0) and -Ai'(0) as ~50-digit rationals.

    Near x = +12 the two Maclaurin series cancel to ~19 digits, so double
    precision constants would wreck the advertised absolute accuracy.  The
    constants follow from two facts needing no external tables:
    Ai(0) * (-Ai'(0)) = 1/(2 sqrt(3) pi) (Gamma reflection), and the ratio
    -Ai'(0)/Ai(0) = lim f(x)/g(x) as x -> +inf (decay of Ai selects the
    ratio; the limit converges like e^(-(4/3) x^(3/2)), ~1e-95 at x = 30).
    """
    f, g, _, _ = _series_fg(Fraction(30), min_terms=260, tail=Fraction(1, 10 ** 80))
    ratio = f / g
    c1c2 = 1 / (2 * _fraction_sqrt(Fraction(3)) * _PI_50)
    c1 = _fraction_sqrt(c1c2 / ratio)
    return c1, ratio * c1


@dataclass(frozen=True)
class AiryZeroTable:
    """First zeros of Ai or Ai', strictly decreasing, all negative."""

    kind: str                # "Ai" | "Ai-prime"
    values: tuple
    sources: tuple           # per-entry "asymptotic" | "refined"

    def __post_init__(self):
        if self.kind not in ("Ai", "Ai-prime"):
            raise ValueError(f"unknown kind {self.kind!r}")
        if any(v >= 0 for v in self.values):
            raise ValueError("Airy zeros must be negative")
        if any(b >= a for a, b in zip(self.values, self.values[1:])):
            raise ValueError("Airy zeros must be strictly decreasing")


def _series_fg(x, min_terms=0, tail=Fraction(1, 10 ** 25)):
    """Exact partial sums of f, g, f', g' at the exact rational value of x."""
    x = Fraction(x)
    x3 = x * x * x
    ax3 = abs(x3)
    f = Fraction(1)
    fp = Fraction(0)
    g = x
    gp = Fraction(1)
    tf = Fraction(1)          # term of f at power 3k
    tg = x                    # term of g at power 3k+1
    k = 0
    while True:
        tf = tf * x3 / ((3 * k + 2) * (3 * k + 3))
        tg = tg * x3 / ((3 * k + 3) * (3 * k + 4))
        k += 1
        f += tf
        g += tg
        if x:
            fp += tf * (3 * k) / x
            gp += tg * (3 * k + 1) / x
        if k >= min_terms and abs(tf) < tail and abs(tg) < tail:
            # terms decay monotonically once (3k)(3k+1) exceeds |x^3|
            if (3 * k) * (3 * k + 1) > ax3:
                break
        if k > 600:
            break
    return f, g, fp, gp


def _airy_pair(x):
    c1, c2 = _airy_constants()
    f, g, fp, gp = _series_fg(x)
    return float(c1 * f - c2 * g), float(c1 * fp - c2 * gp)


def airy_ai(x):
    """Ai(x) for |x| <= 12, absolute error below 1e-12.

    The whole combination Ai = Ai(0) f + Ai'(0) g is carried in exact
    rational arithmetic (50-digit rational constants) and rounded once;
    both the alternating-series cancellation at negative x and the f-vs-g
    cancellation at positive x stay far below the error budget.
    """
    if abs(x) > SERIES_WINDOW:
        raise ValueError(f"|x| = {abs(x)} outside the series-accurate window {SERIES_WINDOW}")
    return _airy_pair(x)[0]


def airy_ai_prime(x):
    """Ai'(x) for |x| <= 12, absolute error below 1e-12."""
    if abs(x) > SERIES_WINDOW:
        raise ValueError(f"|x| = {abs(x)} outside the series-accurate window {SERIES_WINDOW}")
    return _airy_pair(x)[1]


def _airy_both(x):
    return _airy_pair(x)


def airy_zero_seed(s):
    """Asymptotic location of the s-th zero of Ai: -[3 pi (4s-1)/8]^(2/3)."""
    if s < 1:
        raise ValueError("zero index s starts at 1")
    return -((3.0 * math.pi * (4 * s - 1) / 8.0) ** (2.0 / 3.0))


def airy_prime_zero_seed(s):
    """Asymptotic location of the s-th zero of Ai': -[3 pi (4s-3)/8]^(2/3)."""
    if s < 1:
        raise ValueError("zero index s starts at 1")
    return -((3.0 * math.pi * (4 * s - 3) / 8.0) ** (2.0 / 3.0))


def airy_zero(s, with_source=False):
    """s-th zero of Ai; Newton-refined when the seed lies in the window."""
    seed = airy_zero_seed(s)
    if abs(seed) > SERIES_WINDOW:
        return (seed, "asymptotic") if with_source else seed
    x = seed
    for _ in range(30):
        ai, dai = _airy_both(x)
        if abs(ai) < _REFINED_ABS and abs(ai / dai) < 1e-12:
            break
        x -= ai / dai
    return (x, "refined") if with_source else x


def airy_prime_zero(s, with_source=False):
    """s-th zero of Ai'; Newton-refined when the seed lies in the window.

    Newton on Ai' uses Ai''(x) = x Ai(x), so only the two base series are
    ever evaluated.
    """
    seed = airy_prime_zero_seed(s)
    if abs(seed) > SERIES_WINDOW:
        return (seed, "asymptotic") if with_source else seed
    x = seed
    for _ in range(30):
        ai, dai = _airy_both(x)
        d2 = x * ai
        if abs(dai) < _REFINED_ABS and abs(dai / d2) < 1e-12:
            break
        x -= dai / d2
    return (x, "refined") if with_source else x


def airy_zeros(kind, count):
    """Table of the first ``count`` zeros of Ai or Ai'."""
    picker = airy_zero if kind == "Ai" else airy_prime_zero
    pairs = [picker(s, with_source=True) for s in range(1, count + 1)]
    return AiryZeroTable(kind, tuple(v for v, _ in pairs), tuple(src for _, src in pairs))
