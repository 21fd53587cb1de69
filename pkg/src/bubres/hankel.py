"""Spherical Hankel functions through their exact polynomial representation.

The outgoing spherical Hankel function factors as

    h_l(z) = z**(-l-1) * p_l(z) * exp(i z)

where p_l is a degree-l polynomial with exact Gaussian-integer coefficients.
Everything in this module is built on that factorization: function values,
derivative recurrences, the log-derivative ratio G_l(z) = z h_l'(z)/h_l(z)
(rational in z), its exact Taylor expansion about the origin, and the
Wronskian combination R_l(z) that vanishes identically.

Two evaluation regimes for G_l:

* ``l <= RATIO_METHOD_LMAX``: the rational form -(l+1) + i z + z p_l'(z)/p_l(z)
  with coefficients rounded to doubles at call time.
* ``l > RATIO_METHOD_LMAX``: a forward ratio recurrence on h_{n+1}/h_n, which
  is the rescaled form of the (stable, y_l-dominated) forward recurrence and
  cannot overflow.

The boundary is empirical: |p_l| coefficients grow like (2l)!/(2^l l!), about
1e40 at l = 30, beyond which double-precision conditioning of the rational
form degrades.  It is exposed as a module constant so callers can tune it.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .exact import GRational

# Largest l for which G_l is evaluated from the explicit polynomial ratio;
# above this the ratio recurrence is used.  Empirical, see module docstring.
RATIO_METHOD_LMAX = 30

_MINUS_I = GRational(0, -1, 1)


class PoleError(ZeroDivisionError):
    """Evaluation requested at (or numerically indistinguishable from) a pole."""


@dataclass(frozen=True)
class PlPoly:
    """Exact coefficients of p_l, ascending degree, exactly l+1 entries."""

    l: int
    coefficients: tuple

    def __post_init__(self):
        if len(self.coefficients) != self.l + 1:
            raise ValueError("PlPoly must have exactly l+1 coefficients")


@lru_cache(maxsize=None)
def pl_coefficients(l):
    """Exact coefficients a_n = i^(-n-1) (2l-n)! / (2^(l-n) (l-n)! n!).

    All entries are Gaussian integers (denominator 1); big-integer arithmetic
    precludes overflow for any l.
    """
    if l < 0:
        raise ValueError("order l must be >= 0")
    coeffs = []
    for n in range(l + 1):
        mag = Fraction(factorial(2 * l - n), (2 ** (l - n)) * factorial(l - n) * factorial(n))
        coeffs.append((_MINUS_I ** (n + 1)) * GRational(mag.numerator, 0, mag.denominator))
    return PlPoly(l, tuple(coeffs))


def _pl_floats(l):
    # round exact coefficients to doubles at call time (never cached)
    return [c.to_complex() for c in pl_coefficients(l).coefficients]


def _horner(coeffs, z):
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def _horner_abs(coeffs, az):
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * az + abs(c)
    return acc


def spherical_hankel(l, z):
    """Outgoing spherical Hankel function h_l(z) = z^(-l-1) p_l(z) e^(iz)."""
    if z == 0:
        raise PoleError(f"h_{l} has a pole of order {l + 1} at z = 0")
    return z ** (-l - 1) * _horner(_pl_floats(l), z) * cmath.exp(1j * z)


def spherical_hankel_derivative(l, z):
    """dh_l/dz via the recurrence l h_l(z)/z - h_{l+1}(z)."""
    if z == 0:
        raise PoleError(f"h_{l}' has a pole at z = 0")
    return l * spherical_hankel(l, z) / z - spherical_hankel(l + 1, z)


def spherical_hankel_second_derivative(l, z):
    """d^2 h_l/dz^2 by differentiating the derivative recurrence once more."""
    if z == 0:
        raise PoleError(f"h_{l}'' has a pole at z = 0")
    return (l * (l - 1) / (z * z) * spherical_hankel(l, z)
            - (2 * l + 1) / z * spherical_hankel(l + 1, z)
            + spherical_hankel(l + 2, z))


def hankel_ratio_G(l, z):
    """G_l(z) = z h_l'(z) / h_l(z).

    Rational form for l <= RATIO_METHOD_LMAX, forward ratio recurrence above.
    Raises PoleError at (numerical) zeros of h_l.
    """
    if l < 0:
        raise ValueError("order l must be >= 0")
    if z == 0:
        raise PoleError("G_l is evaluated by limit only at z = 0; pass a small z")
    if l <= RATIO_METHOD_LMAX:
        coeffs = _pl_floats(l)
        p = _horner(coeffs, z)
        scale = _horner_abs(coeffs, abs(z))
        if abs(p) < 1e-13 * scale:
            raise PoleError(f"z = {z} is numerically a zero of h_{l}")
        dp = _horner([n * c for n, c in enumerate(coeffs)][1:], z)
        return -(l + 1) + 1j * z + z * dp / p
    return _g_ratio_recurrence(l, z)


def _g_ratio_recurrence(l, z):
    # r_n = h_{n+1}/h_n obeys r_n = (2n+1)/z - 1/r_{n-1}; forward direction is
    # stable because h_l is dominated by the growing y_l solution.
    r = 1.0 / z - 1j
    for n in range(1, l + 1):
        if r == 0:
            r = 1e-300
        r = (2 * n + 1) / z - 1.0 / r
    if not cmath.isfinite(r) or abs(z * r) > 1e13 * (l + 1):
        raise PoleError(f"z = {z} is numerically a zero of h_{l}")
    return l - z * r


def hankel_ratio_G_prime(l, z):
    """dG_l/dz = (l(l+1) - G - G^2)/z - z, from the spherical Bessel ODE."""
    g = hankel_ratio_G(l, z)
    return (l * (l + 1) - g - g * g) / z - z


def g_ratio_exact(l, z):
    """G_l at an exact Gaussian-rational point, evaluated without rounding.

    Serves as the high-precision oracle for the two-method consistency tests
    of the floating evaluators.
    """
    if not isinstance(z, GRational):
        raise TypeError("g_ratio_exact expects a GRational argument")
    coeffs = pl_coefficients(l).coefficients
    p = GRational(0, 0, 1)
    dp = GRational(0, 0, 1)
    for c in reversed(coeffs):
        dp = dp * z + p
        p = p * z + c
    if p.is_zero():
        raise PoleError("exact zero of p_l")
    return GRational(-(l + 1), 0, 1) + GRational(0, 1, 1) * z + z * dp / p


def g_taylor_coefficients(l, order):
    """Exact Taylor coefficients of G_l about 0 through the given order.

    Computed by exact series division of z p_l'(z) by p_l(z) (convolution
    recurrence c_n = (b_n - sum_{j<n} c_j a_{n-j}) / a_0) plus the
    -(l+1) + i z terms.  Returns order+1 GRational values.
    """
    if l < 0 or order < 1:
        raise ValueError("need l >= 0 and order >= 1")
    a = list(pl_coefficients(l).coefficients)
    b = [GRational(n, 0, 1) * a[n] for n in range(len(a))]
    b[0] = GRational(0, 0, 1)
    c = []
    for n in range(order + 1):
        s = b[n] if n < len(b) else GRational(0, 0, 1)
        jmin = max(0, n - l)
        for j in range(jmin, n):
            s = s - c[j] * a[n - j]
        c.append(s / a[0])
    c[0] = c[0] + GRational(-(l + 1), 0, 1)
    c[1] = c[1] + GRational(0, 1, 1)
    return c


def wronskian_residual(l, z):
    """R_l(z) = 2i p_l(z)p_l(-z) + p_l'(z)p_l(-z) + p_l'(-z)p_l(z) + 2i z^(2l).

    Identically zero; exact zero when z is a GRational, numerically tiny when
    z is a complex double.
    """
    exact = isinstance(z, GRational)
    if exact:
        coeffs = pl_coefficients(l).coefficients
        two_i = GRational(0, 2, 1)
    else:
        coeffs = _pl_floats(l)
        two_i = 2j
    p, dp = _poly_and_derivative(coeffs, z)
    pm, dpm = _poly_and_derivative(coeffs, -z)
    return two_i * p * pm + dp * pm + dpm * p + two_i * z ** (2 * l)


def _poly_and_derivative(coeffs, z):
    p = coeffs[0] * 0
    dp = coeffs[0] * 0
    for c in reversed(coeffs):
        dp = dp * z + p
        p = p * z + c
    return p, dp


def q_ratio(l, omega, r, c):
    """Hankel weight Q_l(omega, r) of the exterior Neumann problem.

    Q_l = h_l(omega r/c) e^(-i omega (r-1)/c) / ((omega/c) h_l'(omega/c)),
    evaluated in the exponential-free form r^(-l-1) p_l(omega r/c) / q_l(omega/c)
    with q_l = l p_l - p_{l+1}, so no overflow from the cancelling e^(i omega/c).
    Raises PoleError at rigid resonances (zeros of h_l').
    """
    if r < 1:
        raise ValueError("field radius r must be >= 1")
    z1 = omega / c
    qcoeffs = dhankel_poly_coefficients(l)
    qval = _horner(qcoeffs, z1)
    scale = _horner_abs(qcoeffs, abs(z1))
    if abs(qval) < 1e-12 * scale:
        raise PoleError(f"omega = {omega} is numerically a rigid resonance of order {l}")
    return r ** (-l - 1) * _horner(_pl_floats(l), z1 * r) / qval


@lru_cache(maxsize=None)
def dhankel_poly_coefficients(l):
    """Float coefficients of q_l(z) = l p_l(z) - p_{l+1}(z), whose zeros are
    the zeros of h_l' (degree l+1)."""
    pl = [c.to_complex() for c in pl_coefficients(l).coefficients]
    pl1 = [c.to_complex() for c in pl_coefficients(l + 1).coefficients]
    return tuple(l * (pl[n] if n <= l else 0) - pl1[n] for n in range(l + 2))


def spherical_j1(r):
    """j_1(r) = sin(r)/r^2 - cos(r)/r; kept only for the l=1 exclusion check."""
    import math
    return math.sin(r) / r ** 2 - math.cos(r) / r


def spherical_y1(r):
    """y_1(r) = -cos(r)/r^2 - sin(r)/r; kept only for the l=1 exclusion check."""
    import math
    return -math.cos(r) / r ** 2 - math.sin(r) / r
