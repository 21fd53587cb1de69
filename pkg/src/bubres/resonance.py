"""Rigid and deformation scattering resonance sets.

Rigid resonances are the zeros of dh_l(eps*omega); by the polynomial
factorization they are the roots of q_l(z) = l p_l(z) - p_{l+1}(z) at
omega = z/eps, so one root-find in z serves every Mach number.

Deformation resonances solve lambda^2 + rhat_l G_l(eps*lambda) = 0.  Clearing
the G_l denominator turns this into a degree l+2 polynomial

    F(lambda) = lambda^2 p_l(z) + rhat [ (i z - (l+1)) p_l(z) + z p_l'(z) ],
    z = eps*lambda,

whose roots are found simultaneously (Aberth) and then Newton-polished on F
itself.  F is used instead of the rational form because the deep arc roots
sit close to zeros of p_l, i.e. poles of G_l, where Newton on the rational
form is erratic.  Above POLY_METHOD_LMAX the polish evaluates F and F' in
exact Gaussian-rational arithmetic at each (exactly representable) double
iterate: evaluation cancellation near the arc grows like e^(2|Im z|) and
exceeds double precision there, while the exact evaluation is immune and
costs little.

Residuals are reported as relative backward errors of F: |F(lambda)| divided
by the same expression with every term replaced by its magnitude.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import airy
from .cpoly import CPoly, DegenerateRootError, find_roots, polish_root
from .exact import GRational
from .hankel import dhankel_poly_coefficients, hankel_ratio_G, hankel_ratio_G_prime, pl_coefficients
from .params import rl_hat

# Aberth+double-polish below, Aberth+exact-arithmetic polish above.
POLY_METHOD_LMAX = 30

# Exact-coefficient doubles overflow shortly beyond this order.
POLY_OVERFLOW_LMAX = 130

DEFAULT_SYMMETRY_TOL = 1e-9
DEFAULT_RESIDUE_CROSS_TOL = 1e-6


class SpectrumError(RuntimeError):
    """A computed resonance set violated a structural invariant."""


@dataclass(frozen=True)
class ResonanceSet:
    """Resonances of one (kind, l, epsilon): values, relative residuals, method."""

    kind: str                # "rigid" | "deformation"
    l: int
    epsilon: float
    values: tuple
    residuals: tuple
    method: str              # "polynomial" | "newton-asymptotic" | "closed-form"
    notes: tuple = ()        # per-value provenance / suspect marks

    def __post_init__(self):
        expected = self.l + 1 if self.kind == "rigid" else self.l + 2
        if len(self.values) != expected:
            raise SpectrumError(
                f"{self.kind} set for l={self.l} has {len(self.values)} values, expected {expected}")

    @property
    def gap(self):
        return min(-v.imag for v in self.values)


@dataclass(frozen=True)
class ResidueData:
    """Weight lambda_j * Res[(lambda^2 + rhat G_l)^-1] attached to one resonance."""

    l: int
    resonance: complex
    weight: complex
    cross_weight: complex
    suspect: bool


def _check_structure(values, l, sym_tol=DEFAULT_SYMMETRY_TOL, kind="deformation"):
    # strict negativity only: the Rayleigh pair's |Im| is exponentially small
    # in 1/eps^2 and can sit far below any relative margin while remaining
    # strictly negative (the exact-arithmetic polish resolves its sign)
    for v in values:
        if not (v.imag < 0.0):
            raise SpectrumError(f"{kind} resonance {v} (l={l}) is not strictly below the real axis")
    for v in values:
        mirror = -v.conjugate()
        if min(abs(w - mirror) for w in values) > sym_tol * max(1.0, abs(v)):
            raise SpectrumError(
                f"{kind} set (l={l}) is not symmetric about the imaginary axis near {v}")


# ---------------------------------------------------------------------------
# rigid resonances


class _ExactPoly:
    """A polynomial with exact Gaussian-rational coefficients, exposing
    double-precision evaluation and exact Newton steps."""

    def __init__(self, exact_coeffs):
        self.exact = tuple(exact_coeffs)
        self.coeffs = [c.to_complex() for c in self.exact]
        self.mags = [abs(c) for c in self.coeffs]

    def value(self, z):
        return _horner_c(self.coeffs, z)

    def derivative(self, z):
        acc = 0j
        p = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + p
            p = p * z + c
        return acc

    def residual(self, z):
        return abs(self.value(z)) / max(_horner_abs_c(self.mags, abs(z)), 1e-300)

    def exact_newton_step(self, z):
        zd = _Dyadic.from_float(z.real, z.imag)
        zero = _Dyadic(0, 0, 0)
        p, dp = zero, zero
        for c in self.exact_dyadic:
            dp = dp.mul(zd).add(p)
            p = p.mul(zd).add(c)
        if dp.is_zero():
            return None
        return p.div_to_complex(dp)


@lru_cache(maxsize=None)
def _rigid_exact_poly(l):
    pl = pl_coefficients(l).coefficients
    pl1 = pl_coefficients(l + 1).coefficients
    lg = GRational(l, 0, 1)
    return _ExactPoly(tuple((lg * pl[n] if n <= l else GRational(0, 0, 1)) - pl1[n]
                            for n in range(l + 2)))


def rigid_resonances(params, l, tol=1e-12, max_iter=200):
    """All l+1 rigid (Neumann) resonances omega with dh_l(eps*omega) = 0.

    Solved once in z = eps*omega, so the set scales exactly like 1/eps.
    Roots are Aberth-seeded and Newton-polished; whenever the double-polished
    set fails its structure checks (deep-arc cancellation), the polish is
    redone with exact-arithmetic Newton steps.
    """
    if params.epsilon <= 0:
        raise ValueError("rigid resonances require epsilon > 0 (none exist in the incompressible limit)")
    if l < 0:
        raise ValueError("l must be >= 0")
    qcoeffs = dhankel_poly_coefficients(l)
    if l == 0:
        # q_0(z) = i + z exactly
        omegas = (-1j / params.epsilon,)
        return ResonanceSet("rigid", l, params.epsilon, omegas,
                            (0.0,), "closed-form")
    qx = _rigid_exact_poly(l)
    report = find_roots(CPoly(qcoeffs), tol=tol, max_iter=max_iter)
    last_error = None
    for attempt in ("double", "exact"):
        if attempt == "double":
            zs = []
            for z in report.roots:
                try:
                    zs.append(polish_root(qx.value, qx.derivative, z, tol=tol))
                except DegenerateRootError:
                    zs.append(complex(z))
        else:
            zs, _ = _exact_polish_repair(qx, report.roots, l + 1,
                                         _rigid_arc_seeds(l), what=f"rigid (l={l})")
        zs, _ = _symmetrize(zs, ["newton"] * len(zs), qx.residual)
        zs.sort(key=lambda z: (round(z.imag, 9), z.real))
        omegas = tuple(z / params.epsilon for z in zs)
        try:
            _check_structure(omegas, l, kind="rigid")
        except SpectrumError as err:
            last_error = err
            continue
        residuals = tuple(qx.residual(z) for z in zs)
        return ResonanceSet("rigid", l, params.epsilon, omegas, residuals, "polynomial")
    raise last_error


def _rigid_arc_seeds(l):
    # zeros of dH_nu near nu [1 + 2^(-1/3) e^(-2pi i/3) nu^(-2/3) |eta'_k| + ...]
    nu = l + 0.5
    rot1 = cmath.exp(-2j * math.pi / 3.0)
    rot2 = cmath.exp(-4j * math.pi / 3.0)
    for k in range(1, (l + 1) // 2 + 2):
        eta = abs(airy.airy_prime_zero(k))
        y = nu * (1.0 + 2.0 ** (-1.0 / 3.0) * rot1 * nu ** (-2.0 / 3.0) * eta
                  + 0.3 * 2.0 ** (-2.0 / 3.0) * rot2 * nu ** (-4.0 / 3.0) * eta * eta)
        yield y
        yield -y.conjugate()


def _poly_rel_residual(coeffs, z):
    val = 0j
    mag = 0.0
    az = abs(z)
    for c in reversed(coeffs):
        val = val * z + c
        mag = mag * az + abs(c)
    return abs(val) / mag if mag > 0 else abs(val)


# ---------------------------------------------------------------------------
# deformation resonances


def _require_deformation_l(l):
    if l == 1:
        raise ValueError("l = 1 modes are excluded by the center-of-mass constraint")
    if l < 0:
        raise ValueError("l must be >= 0")


def deformation_polynomial(params, l):
    """Monic degree-(l+2) polynomial in lambda whose roots are the deformation
    resonances; assembled from the exact p_l coefficients, then rounded."""
    _require_deformation_l(l)
    if params.epsilon <= 0:
        raise ValueError("deformation polynomial requires epsilon > 0")
    if l > POLY_OVERFLOW_LMAX:
        raise ValueError(f"polynomial coefficients overflow doubles beyond l = {POLY_OVERFLOW_LMAX}")
    eps = params.epsilon
    rh = rl_hat(params, l)
    a = [c.to_complex() for c in pl_coefficients(l).coefficients]
    coeffs = [0j] * (l + 3)
    for n in range(l + 1):
        an = a[n] * eps ** n
        coeffs[n + 2] += an                        # lambda^2 p
        coeffs[n] += rh * (n - (l + 1)) * an       # -(l+1) p  and  z p' parts
        coeffs[n + 1] += 1j * rh * eps * an        # i z p
    lead = coeffs[l + 2]
    return CPoly(tuple(c / lead for c in coeffs))


class _Dyadic:
    """Gaussian integer times 2^(-e): exact arithmetic for dyadic data.

    Every input of the cleared form is dyadic (float parameters are binary
    rationals, p_l coefficients are Gaussian integers), so Newton's F and F'
    evaluate exactly with integer multiplies and shifts only; this is what
    makes the exact polish cheap.
    """

    __slots__ = ("re", "im", "e")

    def __init__(self, re, im, e):
        self.re = re
        self.im = im
        self.e = e

    @staticmethod
    def from_float(x, y=0.0):
        fx = Fraction(x)
        fy = Fraction(y)
        ex = fx.denominator.bit_length() - 1
        ey = fy.denominator.bit_length() - 1
        e = max(ex, ey)
        return _Dyadic(fx.numerator << (e - ex), fy.numerator << (e - ey), e)

    def mul(self, other):
        a, b, c, d = self.re, self.im, other.re, other.im
        return _Dyadic(a * c - b * d, a * d + b * c, self.e + other.e)

    def add(self, other):
        if self.e >= other.e:
            s = self.e - other.e
            return _Dyadic(self.re + (other.re << s), self.im + (other.im << s), self.e)
        s = other.e - self.e
        return _Dyadic((self.re << s) + other.re, (self.im << s) + other.im, other.e)

    def div_to_complex(self, other):
        # (self/other) rounded to a complex double
        den = other.re * other.re + other.im * other.im
        nre = self.re * other.re + self.im * other.im
        nim = self.im * other.re - self.re * other.im
        shift = self.e - other.e
        if shift > 0:
            den <<= shift
        elif shift < 0:
            nre <<= -shift
            nim <<= -shift
        if den == 0:
            return None
        return complex(_int_ratio(nre, den), _int_ratio(nim, den))

    def is_zero(self):
        return self.re == 0 and self.im == 0


def _int_ratio(n, d):
    try:
        return n / d
    except OverflowError:
        # keep ~60 significant bits of each and divide those
        k = max(n.bit_length(), d.bit_length()) - 60
        return (n >> k) / (d >> k)


class _ClearedForm:
    """F(lambda), F'(lambda), backward scale, and exact-arithmetic twins."""

    def __init__(self, params, l):
        self.l = l
        self.eps = params.epsilon
        self.rh = rl_hat(params, l)
        self.a = [c.to_complex() for c in pl_coefficients(l).coefficients]
        self.amag = [abs(c) for c in self.a]

    def _pv(self, z):
        p = dp = ddp = 0j
        for c in reversed(self.a):
            ddp = ddp * z + 2 * dp
            dp = dp * z + p
            p = p * z + c
        return p, dp, ddp

    def value(self, lam):
        z = self.eps * lam
        p, dp, _ = self._pv(z)
        return lam * lam * p + self.rh * ((1j * z - (self.l + 1)) * p + z * dp)

    def derivative(self, lam):
        z = self.eps * lam
        p, dp, ddp = self._pv(z)
        return (2 * lam * p + self.eps * lam * lam * dp
                + self.rh * self.eps * (1j * p + (1j * z - self.l) * dp + z * ddp))

    def scale(self, lam):
        az = abs(self.eps * lam)
        al = abs(lam)
        P = DP = 0.0
        for c in reversed(self.amag):
            DP = DP * az + P
            P = P * az + c
        return al * al * P + self.rh * ((az + self.l + 1) * P + az * DP)

    def residual(self, lam):
        return abs(self.value(lam)) / self.scale(lam)

    # exact twin: the double iterate is an exact dyadic point, so F and F'
    # evaluate without rounding; only the Newton step F/F' is rounded, which
    # also keeps the division root-scaled where F itself overflows doubles.

    def exact_newton_step(self, lam):
        l = self.l
        eps = _Dyadic.from_float(self.eps)
        lamd = _Dyadic.from_float(lam.real, lam.imag)
        rh = _Dyadic.from_float(self.rh)
        z = eps.mul(lamd)
        zero = _Dyadic(0, 0, 0)
        p, dp, ddp = zero, zero, zero
        for c in reversed(pl_coefficients(l).coefficients):
            cd = _Dyadic(c.re_num, c.im_num, 0)
            ddp = ddp.mul(z).add(_Dyadic(dp.re << 1, dp.im << 1, dp.e))
            dp = dp.mul(z).add(p)
            p = p.mul(z).add(cd)
        iz = _Dyadic(-z.im, z.re, z.e)
        iz_m_l1 = iz.add(_Dyadic(-(l + 1), 0, 0))
        val = lamd.mul(lamd).mul(p).add(rh.mul(iz_m_l1.mul(p).add(z.mul(dp))))
        iz_m_l = iz.add(_Dyadic(-l, 0, 0))
        ip = _Dyadic(-p.im, p.re, p.e)
        der = (_Dyadic(lamd.re << 1, lamd.im << 1, lamd.e).mul(p)
               .add(eps.mul(lamd).mul(lamd).mul(dp))
               .add(rh.mul(eps).mul(ip.add(iz_m_l.mul(dp)).add(z.mul(ddp)))))
        if der.is_zero():
            return None
        return val.div_to_complex(der)


def _exact_newton(form, lam0, max_iter=60):
    """Newton with exactly evaluated F, F'.

    The only floor is the quantization of the double iterate itself, so
    convergence is declared on step size; two extra steps are then taken so
    that even an exponentially small imaginary component settles to its own
    ulp (each component of the iterate is stored separately, so |Im| far
    below |Re| * eps_machine is still meaningful).  Returns None when the
    iteration fails to settle (basin-boundary seed)."""
    lam = complex(lam0)
    cleanup = 0
    for _ in range(max_iter):
        if not cmath.isfinite(lam):
            return None
        step = form.exact_newton_step(lam)
        if step is None:
            return None
        lam = lam - step
        if cleanup:
            cleanup -= 1
            if cleanup == 0:
                return lam
        elif abs(step) <= 4e-16 * max(abs(lam), 1.0):
            cleanup = 2
    return lam if cleanup else None


def deformation_resonances(params, l, tol=1e-12, max_iter=200, poly_lmax=POLY_METHOD_LMAX,
                           symmetry_tol=DEFAULT_SYMMETRY_TOL):
    """All l+2 deformation resonances of mode l.

    Aberth on the cleared polynomial supplies simultaneous seeds; every root
    is then Newton-polished on the cleared form, in doubles for
    l <= poly_lmax and with exact-arithmetic evaluations above (the deep arc
    roots lose up to ~e^(2|Im(eps*lambda)|) to cancellation in doubles).
    The set is validated for count, strict lower-half-plane location and
    symmetry under lambda -> -conj(lambda).
    """
    _require_deformation_l(l)
    if params.epsilon <= 0:
        raise ValueError("deformation resonances require epsilon > 0; "
                         "use incompressible_frequency for the eps = 0 limit")
    form = _ClearedForm(params, l)
    poly = deformation_polynomial(params, l)
    report = find_roots(poly, tol=tol, max_iter=max_iter)
    attempts = ["double", "exact"] if l <= poly_lmax else ["exact"]
    last_error = None
    for attempt in attempts:
        if attempt == "double":
            values, notes = _double_polish_set(form, report.roots)
        else:
            values, notes = _exact_polish_set(form, l, report.roots, params)
        values, notes = _symmetrize(values, notes, form.residual)
        values, notes = _sorted_set(values, notes)
        try:
            _check_structure(values, l, sym_tol=symmetry_tol)
        except SpectrumError as err:
            # deep-arc roots lose ~e^(2|Im(eps*lambda)|) to cancellation in
            # doubles; escalate the whole set to exact-arithmetic polishing
            last_error = err
            continue
        residuals = tuple(form.residual(v) for v in values)
        return ResonanceSet("deformation", l, params.epsilon, tuple(values), residuals,
                            "polynomial", tuple(notes))
    raise last_error


def _double_polish_set(form, seeds):
    values = []
    notes = []
    for z in seeds:
        try:
            root = polish_root(form.value, form.derivative, z,
                               tol=1e-18, max_iter=80, scale=form.scale)
            note = "newton"
        except DegenerateRootError:
            root = complex(z)
            note = "polish-failed"
        if (abs(root.imag) < 1e-8 * max(1.0, abs(root))
                or abs(root.real) < 1e-4 * max(1.0, abs(root))):
            # near-real-axis roots carry exponentially small imaginary parts,
            # and near-imaginary-axis roots are exactly imaginary (G_l is
            # real there); double evaluation noise can swamp either, so both
            # are settled in exact arithmetic
            refined = _exact_newton(form, root)
            if refined is not None:
                root = refined
                note = "exact-newton"
        values.append(root)
        notes.append(note)
    return values, notes


def _exact_polish_repair(form, seeds, target, extra_seeds=(), what="root"):
    """Polish a full seed set with exact-arithmetic Newton, then repair it.

    The exact forms here all satisfy F(-conj(z)) = conj(F(z)) identically,
    so missing mirror partners are recovered by polishing the mirrored point;
    seeds whose Newton runs hop basins are dropped as duplicates.  Any still
    missing roots are retried from the supplied extra seeds.
    """
    found = []      # (root, note)

    def add(root, note):
        if root is None:
            return False
        for r, _ in found:
            if abs(root - r) <= 1e-10 * max(1.0, abs(r)):
                return False
        found.append((root, note))
        return True

    for z in seeds:
        add(_exact_newton(form, z), "exact-newton")
    for r, _ in list(found):
        mirror = -r.conjugate()
        if abs(mirror - r) > 1e-10 * max(1.0, abs(r)):
            add(_exact_newton(form, mirror), "exact-newton-mirror")
    for e in extra_seeds:
        if len(found) >= target:
            break
        add(_exact_newton(form, e), "exact-newton-asymptotic")
    if len(found) != target:
        raise SpectrumError(
            f"{what} solve found {len(found)} distinct roots, expected {target}")
    return [r for r, _ in found], [n for _, n in found]


def _exact_polish_set(form, l, seeds, params):
    def extras():
        yield axis_resonance_asymptotic(params, l)[0]
        if l >= 2:
            arc = [arc_resonance_asymptotic(params, l, s) for s in range(1, (l + 1) // 2 + 2)]
            ray = list(rayleigh_pair_smalleps(params, l))
            for e in arc + ray:
                yield e
            for e in arc + ray:
                yield -e.conjugate()

    return _exact_polish_repair(form, seeds, l + 2, extras(), what=f"deformation (l={l})")


def _sorted_set(values, notes):
    order = sorted(range(len(values)), key=lambda i: (round(values[i].imag, 9), values[i].real))
    return [values[i] for i in order], [notes[i] for i in order]


def _symmetrize(values, notes, residual):
    """Restore exact multiset symmetry under lambda -> -conj(lambda).

    The true set is exactly symmetric (the defining function satisfies
    F(-conj(lam)) = conj(F(lam))), but independent polishes of the two
    partners can drift apart inside their conditioning-limited noise balls.
    Each pair is replaced by (w, -conj(w)) for its better-residual member w;
    near-axis roots pair with themselves and are left alone.
    """
    axis, left, right = [], [], []
    for i, v in enumerate(values):
        if abs(v.real) <= 1e-8 * max(1.0, abs(v)):
            axis.append(i)
        elif v.real < 0:
            left.append(i)
        else:
            right.append(i)
    if len(left) != len(right):
        return list(values), list(notes)   # let the structure check report it
    out_v = [values[i] for i in axis]
    out_n = [notes[i] for i in axis]
    left = sorted(left, key=lambda i: values[i].imag)
    remaining = set(right)
    for i in left:
        mirror = -values[i].conjugate()
        j = min(remaining, key=lambda k: abs(values[k] - mirror))
        remaining.discard(j)
        pick = i if residual(values[i]) <= residual(values[j]) else j
        out_v.append(values[pick])
        out_n.append(notes[pick])
        out_v.append(-values[pick].conjugate())
        out_n.append(notes[pick])
    return out_v, out_n


# ---------------------------------------------------------------------------
# asymptotic approximations


def incompressible_frequency(params, l):
    """Real Rayleigh frequency of the incompressible (eps = 0) limit,
    sqrt(rhat_l (l+1))."""
    _require_deformation_l(l)
    return math.sqrt(rl_hat(params, l) * (l + 1))


def _log_mode_lifetime(params, l):
    # log of (1/2eps) [(l+2)(l-1)]^(l+1) (l+1)^l [2^l l!/(2l)!]^2 (eps^2/We)^(l+1)
    if l < 2:
        raise ValueError("mode lifetime is defined for l >= 2")
    eps, we = params.epsilon, params.weber
    return (-math.log(2.0 * eps)
            + (l + 1) * math.log((l + 2) * (l - 1))
            + l * math.log(l + 1)
            + 2.0 * (l * math.log(2.0) + math.lgamma(l + 1) - math.lgamma(2 * l + 1))
            + (l + 1) * (2.0 * math.log(eps) - math.log(we)))


def rayleigh_pair_smalleps(params, l):
    """Small-Mach asymptotic Rayleigh pair (lambda+, lambda-).

    l = 0 uses the exact quadratic-root form; l >= 2 combines the relative
    O(eps^2) real-part correction with the exponentially small imaginary
    part, computed in log space.
    """
    _require_deformation_l(l)
    eps, we = params.epsilon, params.weber
    if l == 0:
        r0 = rl_hat(params, 0)
        plus = cmath.sqrt(r0 - r0 * r0 * eps * eps / 4.0) - 0.5j * r0 * eps
        return plus, -plus.conjugate()
    re = incompressible_frequency(params, l) * (1.0 - (l + 2) * (l - 1) / (2.0 * (2 * l - 1)) * eps * eps / we)
    im = -math.exp(_log_mode_lifetime(params, l)) if eps > 0 else 0.0
    plus = complex(re, im)
    return plus, -plus.conjugate()


def arc_resonance_asymptotic(params, l, s):
    """Fourth-quadrant arc approximation from the s-th zero of Ai'.

    Three terms of the uniform large-order expansion; the quadratic term
    carries (3/10) 2^(-2/3), the coefficient the z(zeta) inversion series
    actually produces.
    """
    if l < 2:
        raise ValueError("arc asymptotics require l >= 2")
    smax = (l + 1) // 2 + 1
    if not 1 <= s <= smax:
        raise ValueError(f"s must lie in 1..{smax} for l = {l}")
    if params.epsilon <= 0:
        raise ValueError("arc asymptotics require epsilon > 0")
    nu = l + 0.5
    eta = abs(airy.airy_prime_zero(s))
    rot1 = cmath.exp(-2j * math.pi / 3.0)
    rot2 = cmath.exp(-4j * math.pi / 3.0)
    bracket = (1.0
               + 2.0 ** (-1.0 / 3.0) * rot1 * nu ** (-2.0 / 3.0) * eta
               + 0.3 * 2.0 ** (-2.0 / 3.0) * rot2 * nu ** (-4.0 / 3.0) * eta * eta)
    return nu / params.epsilon * bracket


def axis_resonance_asymptotic(params, l, regime_k2=5.0):
    """Negative-imaginary-axis resonance estimate; valid for
    l >= regime_k2 * We / eps^2.  Returns (value, in_regime)."""
    if params.epsilon <= 0:
        raise ValueError("axis asymptotics require epsilon > 0")
    eps, we = params.epsilon, params.weber
    nu = l + 0.5
    value = -1j * nu / eps * (eps * eps * nu / we + 0.5 * we / (eps * eps * nu))
    return value, l >= regime_k2 * we / (eps * eps)


# ---------------------------------------------------------------------------
# residues


def residue_weight(params, l, lambda_j, cross_tol=DEFAULT_RESIDUE_CROSS_TOL, full=False):
    """Weight lambda_j * Res[(lambda^2 + rhat G_l(eps lambda))^-1] at a simple root.

    Computed two ways: (a) lambda_j p~(lambda_j) / D'(lambda_j) with D the
    monic cleared polynomial and p~ the matching monic form of p_l(eps lambda);
    (b) 1/phi'(lambda_j) with phi = lambda + rhat G_l(eps lambda)/lambda.
    Returns (a); disagreement beyond cross_tol marks the root suspect.
    """
    _require_deformation_l(l)
    eps = params.epsilon
    rh = rl_hat(params, l)
    a = [c.to_complex() for c in pl_coefficients(l).coefficients]
    # monic p~(lambda) = p_l(eps lambda) / (a_l eps^l): coefficients (a_n/a_l) eps^(n-l)
    ptil = [a[n] / a[l] * eps ** (n - l) for n in range(l + 1)]
    dpoly = deformation_polynomial(params, l)
    dcoeffs = dpoly.coefficients
    dprime = [k * dcoeffs[k] for k in range(1, len(dcoeffs))]
    num = _horner_c(ptil, lambda_j)
    den = _horner_c(dprime, lambda_j)
    dscale = _horner_abs_c(dprime, abs(lambda_j))
    # the Horner floor is ~eps_machine * dscale; a derivative within two
    # orders of it is indistinguishable from a multiple root
    if abs(den) < 1e-13 * dscale:
        raise DegenerateRootError(f"near-multiple deformation root at {lambda_j} (l={l})")
    w_a = lambda_j * num / den
    z = eps * lambda_j
    g = hankel_ratio_G(l, z)
    gp = hankel_ratio_G_prime(l, z)
    phi_prime = 1.0 + rh * (eps * gp * lambda_j - g) / (lambda_j * lambda_j)
    w_b = 1.0 / phi_prime
    suspect = abs(w_a - w_b) > cross_tol * abs(w_a)
    if full:
        return ResidueData(l, lambda_j, w_a, w_b, suspect)
    return w_a


def _horner_c(coeffs, z):
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def _horner_abs_c(coeffs, az):
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * az + abs(c)
    return acc


def residue_set(params, l, resonances=None):
    """ResidueData for every resonance of mode l (computing the set if needed)."""
    if resonances is None:
        resonances = deformation_resonances(params, l)
    return tuple(residue_weight(params, l, v, full=True) for v in resonances.values)


# ---------------------------------------------------------------------------
# spectral gap


def spectral_gap(params, l_max, poly_lmax=POLY_METHOD_LMAX):
    """Resonance of minimal |Im| over modes l in {0, 2, ..., l_max}.

    Modes up to poly_lmax are solved numerically; beyond, the Rayleigh pair
    is taken from its small-Mach asymptotics (the arc and axis families are
    farther from the real axis there).  Returns (l_star, lambda_star, gap).
    """
    if l_max < 2:
        raise ValueError("l_max must be >= 2")
    best = None
    for l in [0] + list(range(2, l_max + 1)):
        if l <= poly_lmax:
            values = deformation_resonances(params, l).values
            cand = min(values, key=lambda v: abs(v.imag))
        else:
            cand = rayleigh_pair_smalleps(params, l)[0]
        if best is None or abs(cand.imag) < abs(best[1].imag):
            best = (l, cand)
    return best[0], best[1], abs(best[1].imag)
