"""Command-line interface.

Subcommands: resonances, rigid, asymptotic, evolve, scan, verify.
Exit codes: 0 success, 1 validation error (bad flags or parameters),
2 numerical failure.  Every numeric knob is a flag and is echoed into the
output header, so a results file identifies the run that produced it.
BUBRES_THREADS caps scan parallelism.
"""

from __future__ import annotations

import argparse
import sys

from . import airy, hankel, modes, resonance, scan
from .exact import GRational
from .io import RunConfig, export_table, format_float
from .params import make_params
from .resonance import SpectrumError


def _add_params(p):
    p.add_argument("--epsilon", type=float, required=False, default=None, help="Mach number")
    p.add_argument("--weber", type=float, default=None, help="Weber number")
    p.add_argument("--ca", type=float, default=None, help="Cavitation number")
    p.add_argument("--gamma", type=float, default=None, help="polytropic exponent")
    p.add_argument("--config", default=None, help="flat key=value config file; flags override")
    p.add_argument("--tol", type=float, default=1e-12, help="root-finder tolerance")
    p.add_argument("--max-iter", type=int, default=200, help="root-finder iteration cap")
    p.add_argument("--poly-lmax", type=int, default=resonance.POLY_METHOD_LMAX,
                   help="method boundary for numeric-vs-asymptotic mode handling")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None, help="output path (stdout if omitted)")


def _build_parser():
    ap = argparse.ArgumentParser(prog="bubres",
                                 description="Scattering resonances and radiative decay of bubble oscillations")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("resonances", help="deformation resonance set for one mode order")
    _add_params(p)
    p.add_argument("--l", type=int, required=True)

    p = sub.add_parser("rigid", help="rigid (Neumann) resonance set for one mode order")
    _add_params(p)
    p.add_argument("--l", type=int, required=True)

    p = sub.add_parser("asymptotic", help="closed-form resonance approximations")
    _add_params(p)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--kind", choices=("rayleigh", "arc", "axis", "incompressible", "stirling"),
                   default="rayleigh")
    p.add_argument("--s", type=int, default=1, help="arc zero index (kind=arc)")

    p = sub.add_parser("evolve", help="beta/Psi field grid for one initial mode")
    _add_params(p)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--beta0-re", type=float, default=1.0)
    p.add_argument("--beta0-im", type=float, default=0.0)
    p.add_argument("--t0", type=float, default=0.0)
    p.add_argument("--t1", type=float, default=5.0)
    p.add_argument("--nt", type=int, default=11)
    p.add_argument("--r0", type=float, default=1.0)
    p.add_argument("--r1", type=float, default=2.0)
    p.add_argument("--nr", type=int, default=5)
    p.add_argument("--theta", type=float, default=1.0471975511965976)
    p.add_argument("--phi", type=float, default=0.0)

    p = sub.add_parser("scan", help="longest-lived-mode scan and scaling fits")
    _add_params(p)
    p.add_argument("--l-max", type=int, required=True)
    p.add_argument("--fit-eps", default=None,
                   help="comma-separated Mach numbers; adds a sweep and least-squares fits")

    p = sub.add_parser("verify", help="exact-identity suite (Taylor structure, Wronskian, residues)")
    _add_params(p)
    p.add_argument("--l-max", type=int, default=8)
    return ap


def _params_from(args):
    cfg = RunConfig()
    if args.config:
        cfg = RunConfig.load(args.config)
    defaults = {"epsilon": 0.1, "weber": 1.0, "cavitation": 2.0, "gamma": 1.4}
    vals = {}
    for key, flag in (("epsilon", args.epsilon), ("weber", args.weber),
                      ("cavitation", args.ca), ("gamma", args.gamma)):
        if flag is not None:
            vals[key] = flag
        elif cfg.get(key) is not None:
            vals[key] = cfg.get(key)
        else:
            vals[key] = defaults[key]
    return make_params(**vals)


def _header(args, params, extra=()):
    lines = [
        "bubres run",
        f"epsilon = {format_float(params.epsilon)}",
        f"weber = {format_float(params.weber)}",
        f"cavitation = {format_float(params.cavitation)}",
        f"gamma = {format_float(params.gamma)}",
        f"tol = {format_float(args.tol)}",
        f"max_iter = {args.max_iter}",
        f"poly_lmax = {args.poly_lmax}",
    ]
    lines.extend(extra)
    return lines


def _emit(records, args, header):
    if args.out:
        export_table(records, args.format, args.out, header)
    else:
        import io as _io
        import tempfile, os
        fd, tmp = tempfile.mkstemp(suffix=f".{args.format}")
        os.close(fd)
        try:
            export_table(records, args.format, tmp, header)
            with open(tmp, encoding="utf-8") as fh:
                sys.stdout.write(fh.read())
        finally:
            os.unlink(tmp)
    return 0


def _resonance_records(res, weights=None):
    out = []
    for k, v in enumerate(res.values):
        rec = [("l", res.l), ("index", k), ("value", v), ("residual", res.residuals[k]),
               ("method", res.method)]
        if weights is not None:
            rec.append(("weight", weights[k].weight))
            rec.append(("suspect", int(weights[k].suspect)))
        out.append(rec)
    return out


def _cmd_resonances(args):
    params = _params_from(args)
    res = resonance.deformation_resonances(params, args.l, tol=args.tol,
                                           max_iter=args.max_iter, poly_lmax=args.poly_lmax)
    weights = resonance.residue_set(params, args.l, res)
    return _emit(_resonance_records(res, weights), args,
                 _header(args, params, [f"kind = deformation", f"l = {args.l}"]))


def _cmd_rigid(args):
    params = _params_from(args)
    res = resonance.rigid_resonances(params, args.l, tol=args.tol, max_iter=args.max_iter)
    return _emit(_resonance_records(res), args,
                 _header(args, params, [f"kind = rigid", f"l = {args.l}"]))


def _cmd_asymptotic(args):
    params = _params_from(args)
    records = []
    if args.kind == "rayleigh":
        plus, minus = resonance.rayleigh_pair_smalleps(params, args.l)
        records = [[("l", args.l), ("branch", "plus"), ("value", plus)],
                   [("l", args.l), ("branch", "minus"), ("value", minus)]]
    elif args.kind == "arc":
        v = resonance.arc_resonance_asymptotic(params, args.l, args.s)
        records = [[("l", args.l), ("s", args.s), ("value", v)]]
    elif args.kind == "axis":
        v, ok = resonance.axis_resonance_asymptotic(params, args.l)
        records = [[("l", args.l), ("value", v), ("in_regime", int(ok))]]
    elif args.kind == "incompressible":
        records = [[("l", args.l), ("value", complex(resonance.incompressible_frequency(params, args.l)))]]
    else:
        l_pred, re_pred, im_pred = scan.stirling_lstar(params)
        records = [[("l_pred", l_pred), ("re_pred", re_pred), ("im_pred", im_pred)]]
    return _emit(records, args, _header(args, params, [f"asymptotic = {args.kind}"]))


def _cmd_evolve(args):
    params = _params_from(args)
    beta0 = complex(args.beta0_re, args.beta0_im)
    shape = modes.project_initial_shape([(args.l, args.m, beta0)])
    grid = []
    for i in range(args.nr):
        r = args.r0 + (args.r1 - args.r0) * i / max(args.nr - 1, 1)
        for j in range(args.nt):
            t = args.t0 + (args.t1 - args.t0) * j / max(args.nt - 1, 1)
            grid.append((r, args.theta, args.phi, t))
    samples = modes.assemble_field(params, shape, grid)
    records = [[("r", s.r), ("theta", s.theta), ("phi", s.phi), ("t", s.t),
                ("psi", s.psi), ("beta", s.beta)] for s in samples]
    return _emit(records, args, _header(args, params,
                                        [f"l = {args.l}", f"m = {args.m}",
                                         f"beta0 = {format_float(beta0.real)}{beta0.imag:+.17g}i"]))


def _cmd_scan(args):
    params = _params_from(args)
    rec = scan.find_lstar(params, args.l_max, poly_lmax=args.poly_lmax)
    records = [[("l", r.l), ("lambda", complex(r.re_lambda, r.im_lambda)), ("method", r.method)]
               for r in rec.rows]
    records.append([("l", rec.l_star), ("lambda", rec.lambda_star), ("method", "summary-lstar")])
    header = _header(args, params, [f"l_max = {args.l_max}"])
    if args.fit_eps:
        eps_list = [float(x) for x in args.fit_eps.split(",")]
        data = []
        for e in eps_list:
            pe = make_params(e, params.weber, params.cavitation, params.gamma)
            lmax = min(max(20, int(3.0 / e ** 2) + 5), 80)
            r = scan.find_lstar(pe, lmax, poly_lmax=args.poly_lmax)
            data.append((e, r.lambda_star.imag))
            records.append([("l", r.l_star), ("lambda", r.lambda_star), ("method", f"sweep-eps={format_float(e)}")])
        fit = scan.fit_scaling(data, "a*eps^-3*exp(-b*eps^-2)")
        header.append(f"fit_form = {fit.form}")
        header.append(f"fit_a = {format_float(fit.coefficients[0])}")
        header.append(f"fit_b = {format_float(fit.coefficients[1])}")
        header.append(f"fit_residual = {format_float(fit.residual_norm)}")
    return _emit(records, args, header)


def _cmd_verify(args):
    params = _params_from(args)
    failures = []
    checks = 0

    def check(name, ok):
        nonlocal checks
        checks += 1
        if not ok:
            failures.append(name)

    for l in range(1, args.l_max + 1):
        coeffs = hankel.g_taylor_coefficients(l, 2 * l + 1)
        for k in range(l):
            check(f"G_{l} odd coefficient z^{2*k+1} vanishes", coeffs[2 * k + 1].is_zero())
        for j in range(0, 2 * l + 1, 2):
            check(f"G_{l} even coefficient z^{j} real", coeffs[j].is_real())
        lead = coeffs[2 * l + 1]
        from fractions import Fraction
        from math import factorial
        expected = Fraction(2 ** l * factorial(l)) ** 2 / Fraction(factorial(2 * l)) ** 2
        check(f"G_{l} coefficient z^{2*l+1} equals i (2^l l!/(2l)!)^2",
              lead.real == 0 and lead.imag == expected)
        for k in range(1, 21):
            z = GRational(2 * k - l, 3 - k, 1 + (k % 5))
            check(f"R_{l} vanishes at rational point #{k}", hankel.wronskian_residual(l, z).is_zero())
    for l in [0] + list(range(2, min(args.l_max, 12) + 1)):
        res = resonance.deformation_resonances(params, l, poly_lmax=args.poly_lmax)
        ws = resonance.residue_set(params, l, res)
        total = sum(w.weight for w in ws)
        check(f"sum of residue weights (l={l}) is 1", abs(total - 1.0) < 1e-9)
        for v in res.values:
            mirror = -v.conjugate()
            check(f"symmetry of deformation set (l={l})",
                  min(abs(w - mirror) for w in res.values) <= 1e-9 * max(1.0, abs(v)))
    sys.stdout.write(f"verify: {checks - len(failures)}/{checks} identity checks passed\n")
    for name in failures:
        sys.stdout.write(f"  FAILED: {name}\n")
    return 0 if not failures else 2


_COMMANDS = {
    "resonances": _cmd_resonances,
    "rigid": _cmd_rigid,
    "asymptotic": _cmd_asymptotic,
    "evolve": _cmd_evolve,
    "scan": _cmd_scan,
    "verify": _cmd_verify,
}


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, KeyError, OSError) as err:
        sys.stderr.write(f"error: {err}\n")
        return 1
    except (SpectrumError, ArithmeticError) as err:
        sys.stderr.write(f"numerical failure: {err}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
