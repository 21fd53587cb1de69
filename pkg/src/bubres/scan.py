"""Longest-lived-mode search and scaling-law fits.

The lifetime proxy M(l, eps) is the leading small-Mach term of the Rayleigh
imaginary part; it is evaluated in log space (log-gamma) because its
factorial pieces overflow doubles near l ~ 120.  find_lstar scans a mode
range, solving numerically up to the configured method boundary and using
M beyond it, and reports the mode of minimal |Im|.

stirling_lstar gives the closed-form predictions obtained by minimizing
M over continuous l with Stirling's formula.  Note an honest caveat, spelled
out in the package README: the numerically computed longest-lived index sits
near 0.38 We/eps^2 rather than the Stirling value (4/e^3) We/eps^2 ~ 0.199
We/eps^2, because the expansion parameter eps*lambda at the optimal mode is
O(1/eps) and the one-term M underestimates how far the minimum shifts.  Both
quantities are exposed so the discrepancy is visible rather than hidden.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .resonance import POLY_METHOD_LMAX, _log_mode_lifetime, deformation_resonances, rayleigh_pair_smalleps


@dataclass(frozen=True)
class ScanRow:
    l: int
    re_lambda: float
    im_lambda: float
    method: str


@dataclass(frozen=True)
class ScanRecord:
    """Per-mode Rayleigh data plus the longest-lived mode of the scan."""

    epsilon: float
    weber: float
    rows: tuple
    l_star: int
    lambda_star: complex

    def __post_init__(self):
        if any(row.im_lambda >= 0 for row in self.rows):
            raise ValueError("scan rows must all lie strictly below the real axis")


@dataclass(frozen=True)
class FitResult:
    form: str
    coefficients: tuple
    residual_norm: float


def mode_lifetime_M(params, l):
    """Leading-order Rayleigh decay magnitude M(l, eps), via log-gamma."""
    return math.exp(_log_mode_lifetime(params, l))


def log_mode_lifetime_M(params, l):
    """log M(l, eps); useful where M itself would underflow."""
    return _log_mode_lifetime(params, l)


def _max_workers():
    raw = os.environ.get("BUBRES_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _scan_one(params, l, poly_lmax):
    if l <= poly_lmax:
        values = deformation_resonances(params, l).values
        lam = min(values, key=lambda v: abs(v.imag))
        if lam.real < 0:
            lam = -lam.conjugate()
        return ScanRow(l, lam.real, lam.imag, "numeric")
    plus = rayleigh_pair_smalleps(params, l)[0]
    return ScanRow(l, plus.real, plus.imag, "asymptotic")


def find_lstar(params, l_max, poly_lmax=POLY_METHOD_LMAX):
    """Scan l = 2..l_max for the mode whose resonance is nearest the real axis.

    Below the method boundary the minimal-|Im| member of the numerically
    computed deformation set is used; above it, the small-Mach Rayleigh
    asymptotics.  Modes whose solve fails are skipped (method flag "failed").
    """
    if l_max < 2:
        raise ValueError("l_max must be >= 2")
    ls = list(range(2, l_max + 1))
    workers = _max_workers()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            raw = list(ex.map(lambda l: _scan_row_safe(params, l, poly_lmax), ls))
    else:
        raw = [_scan_row_safe(params, l, poly_lmax) for l in ls]
    rows = tuple(r for r in raw if r.method != "failed")
    if not rows:
        raise RuntimeError("every mode in the scan failed")
    best = min(rows, key=lambda r: abs(r.im_lambda))
    return ScanRecord(params.epsilon, params.weber, rows, best.l,
                      complex(best.re_lambda, best.im_lambda))


def _scan_row_safe(params, l, poly_lmax):
    try:
        return _scan_one(params, l, poly_lmax)
    except Exception:
        return ScanRow(l, math.nan, -math.inf, "failed")


def stirling_lstar(params):
    """Stirling-minimization predictions (l_pred, re_pred, im_pred).

    l ~ (4/e^3) We/eps^2, Re ~ (1/eps)(4/e^3)^(3/2) (We/eps^2) and
    Im ~ -(1/eps)(4/e^4)(We/eps^2) exp(-(4/e^3) We/eps^2).
    """
    if params.epsilon <= 0:
        raise ValueError("epsilon must be positive")
    x = params.weber / params.epsilon ** 2
    l_pred = 4.0 / math.e ** 3 * x
    re_pred = (4.0 / math.e ** 3) ** 1.5 * x / params.epsilon
    im_pred = -(4.0 / math.e ** 4) * x / params.epsilon * math.exp(-4.0 / math.e ** 3 * x)
    return l_pred, re_pred, im_pred


_FIT_FORMS = ("a*eps^-2", "a*eps^-3", "a*eps^-3*exp(-b*eps^-2)")


def fit_scaling(data, form):
    """Least-squares fit of (epsilon, value) pairs to one of the Fig.-2 forms.

    Linear in transformed coordinates: log|y| + k log(eps) regressed on a
    constant (and on -eps^-2 for the exponential form).  Values may be
    negative (|Im| fits pass Im directly); only magnitudes enter.
    """
    if form not in _FIT_FORMS:
        raise ValueError(f"unknown fit form {form!r}; pick one of {_FIT_FORMS}")
    pts = [(float(e), abs(float(v))) for e, v in data]
    if len(pts) < 3:
        raise ValueError("need at least 3 data points")
    if any(v == 0 or e <= 0 for e, v in pts):
        raise ValueError("fit needs positive epsilon and nonzero values")
    eps = np.array([e for e, _ in pts])
    logy = np.log(np.array([v for _, v in pts]))
    power = 2.0 if form == "a*eps^-2" else 3.0
    target = logy + power * np.log(eps)
    if form == "a*eps^-3*exp(-b*eps^-2)":
        design = np.column_stack([np.ones_like(eps), -eps ** -2.0])
    else:
        design = np.ones((len(pts), 1))
    if np.linalg.matrix_rank(design) < design.shape[1]:
        raise ValueError("degenerate design matrix (epsilon values too repetitive)")
    coef, *_ = np.linalg.lstsq(design, target, rcond=None)
    fitted = design @ coef
    resid = float(np.linalg.norm(target - fitted))
    if form == "a*eps^-3*exp(-b*eps^-2)":
        out = (math.exp(coef[0]), float(coef[1]))
    else:
        out = (math.exp(coef[0]),)
    return FitResult(form, out, resid)
