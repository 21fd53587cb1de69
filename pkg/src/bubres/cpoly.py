"""Complex polynomials and simultaneous root finding.

``find_roots`` is an Aberth-Ehrlich iteration: all roots are refined
simultaneously, which is what lets a single call return the complete
resonance set of a mode.  Before iterating, the polynomial is normalized so
max |coefficient| = 1 and the variable is rescaled by the geometric-mean
root radius |c_0/c_n|^(1/n); the initial configuration is then a circle of
Cauchy-bound radius, rotated by an irrational angle so symmetric root
patterns cannot trap the iteration on a symmetry axis.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 200

# irrational rotation (radians) applied to the initial circle
_TIE_BREAK_ANGLE = 1.0 / math.sqrt(2.0)


class DegenerateRootError(ArithmeticError):
    """Newton polish hit a derivative too small to trust."""


@dataclass(frozen=True)
class CPoly:
    """Complex polynomial, coefficients ascending in degree.

    Exact-zero leading (highest-degree) coefficients are stripped at
    construction; the zero polynomial is represented as (0,).
    """

    coefficients: tuple

    def __post_init__(self):
        coeffs = tuple(complex(c) for c in self.coefficients)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        if not coeffs:
            coeffs = (0j,)
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self):
        return len(self.coefficients) - 1


@dataclass(frozen=True)
class RootReport:
    """All roots of one polynomial with per-root residuals |P(root)|."""

    roots: tuple
    residuals: tuple
    iterations: int
    converged: bool


def horner_eval(poly, z):
    """Evaluate the polynomial at z by Horner's rule."""
    acc = 0j
    for c in reversed(poly.coefficients):
        acc = acc * z + c
    return acc


def derivative(poly):
    """Formal derivative; the derivative of a constant is the zero polynomial."""
    if poly.degree == 0:
        return CPoly((0j,))
    return CPoly(tuple((k + 1) * c for k, c in enumerate(poly.coefficients[1:])))


def _eval_many(coeffs, z):
    p = np.zeros_like(z)
    for c in reversed(coeffs):
        p = p * z + c
    return p


def find_roots(poly, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER):
    """All roots of the polynomial by simultaneous Aberth-Ehrlich iteration.

    Deterministic given its inputs.  Convergence is declared on backward
    error: every residual |P(z_i)| <= tol * sum_k |c_k| |z_i|^k.  Clustered
    (multiple) roots are returned as-is, no deflation; non-convergence within
    max_iter is reported through ``converged=False``, never by truncation.
    """
    n = poly.degree
    if n < 1:
        raise ValueError("find_roots needs degree >= 1")
    coeffs = np.asarray(poly.coefficients, dtype=complex)
    coeffs = coeffs / np.max(np.abs(coeffs))

    # rescale the variable so root magnitudes are O(1); the geometric-mean
    # radius |c0/cn|^(1/n) is the product of all root magnitudes to the 1/n
    c0, cn = coeffs[0], coeffs[-1]
    sigma = (abs(c0 / cn)) ** (1.0 / n) if c0 != 0 else 1.0
    if sigma == 0 or not math.isfinite(sigma):
        sigma = 1.0
    with np.errstate(over="ignore", under="ignore"):
        scaled = coeffs * sigma ** np.arange(n + 1)
    if not np.all(np.isfinite(scaled)):
        sigma = 1.0
        scaled = coeffs.copy()
    scaled = scaled / np.max(np.abs(scaled))
    dscaled = scaled[1:] * np.arange(1, n + 1)

    # initial circle: root-magnitude (Cauchy-type Fujiwara) bound of the
    # rescaled polynomial, rotated off any symmetry axes
    k = np.arange(1, n + 1)
    ratios = np.abs(scaled[:-1][::-1] / scaled[-1])
    radius = 2.0 * np.max(ratios ** (1.0 / k))
    radius = min(max(radius, 1e-3), 1e6)
    angles = 2.0 * np.pi * np.arange(n) / n + _TIE_BREAK_ANGLE
    z = radius * np.exp(1j * angles)

    abs_coeffs = np.abs(scaled)
    iterations = 0
    converged = False
    with np.errstate(all="ignore"):
        for iterations in range(1, max_iter + 1):
            p = _eval_many(scaled, z)
            scale = _eval_many(abs_coeffs, np.abs(z).astype(complex)).real
            if np.all(np.abs(p) <= tol * scale):
                converged = True
                break
            dp = _eval_many(dscaled, z)
            newton = np.where(dp != 0, p / np.where(dp == 0, 1, dp), 0.1)
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            beta = np.sum(1.0 / diff, axis=1)
            denom = 1.0 - newton * beta
            step = np.where(denom != 0, newton / np.where(denom == 0, 1, denom), newton)
            z_new = z - step
            bad = ~np.isfinite(z_new)
            if np.any(bad):
                # reseed escaped iterates on a fresh circle
                z_new[bad] = 1.3 * radius * np.exp(1j * (angles[bad] + 0.37 * iterations))
            z = z_new
            if np.max(np.abs(step)) <= 1e-16 * np.max(np.abs(z)):
                p = _eval_many(scaled, z)
                scale = _eval_many(abs_coeffs, np.abs(z).astype(complex)).real
                converged = bool(np.all(np.abs(p) <= tol * scale))
                break

    roots = z * sigma
    residuals = tuple(abs(horner_eval(poly, r)) for r in roots)
    order = np.lexsort((roots.imag, roots.real))
    roots = tuple(roots[i] for i in order)
    residuals = tuple(residuals[i] for i in order)
    return RootReport(roots, residuals, iterations, converged)


def polish_root(f, df, z0, tol=DEFAULT_TOL, max_iter=60, scale=None):
    """Newton refinement of a single root of an analytic function.

    Returns z with |f(z)| <= tol * scale(z); the default scale is
    max(|z|, 1) * |f'(z)|, callers with a better backward-error measure
    (e.g. a sum of term magnitudes) can pass their own.  When the iterates
    reach the roundoff floor of f without meeting the tolerance, the best
    iterate seen is returned rather than looping forever; a diverging
    trajectory or an underflowing derivative raises DegenerateRootError.
    An immediate return guards flat functions (f(z0) exactly zero).
    """
    z = complex(z0)
    fz = f(z)
    if fz == 0:
        return z
    best_z, best_f = z, abs(fz)
    f_start = abs(fz)
    stalled = 0
    for _ in range(max_iter):
        dfz = df(z)
        if abs(dfz) < 1e-290:
            raise DegenerateRootError(f"derivative underflow near z = {z}")
        step = fz / dfz
        z = z - step
        fz = f(z)
        afz = abs(fz)
        if afz < best_f:
            best_z, best_f = z, afz
            stalled = 0
        else:
            stalled += 1
        local_scale = scale(z) if scale is not None else max(abs(z), 1.0) * abs(dfz)
        if afz <= tol * local_scale or abs(step) <= 1e-16 * max(abs(z), 1.0):
            return z
        if not cmath.isfinite(z) or (afz > 1e6 * f_start and stalled > 5):
            raise DegenerateRootError(f"Newton diverged from z0 = {z0}")
        if stalled >= 4:
            # roundoff floor of f reached; the best iterate is the root
            return best_z
    return best_z
