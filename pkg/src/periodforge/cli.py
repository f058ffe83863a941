"""Command-line interface.

Subcommands
-----------
eval     evaluate a kernel function (wp, wpprime, wzeta, eta, G) on a frame
invert   frame -> moduli point with diagnostics
periods  moduli point -> frame (newton, or agm for type a2)
series   exact Laurent coefficient tables of one infinity branch
qexp     Fourier coefficients of the named modular quantities
verify   run a verification suite; exit 0 iff every check passes
cusp     reproduce the cusp-value tables for one type

Complex numbers are serialized as two-element arrays [re, im]; exact
rationals as "num/den" strings.  Numerical failures exit with status 1 and a
JSON error object on stdout; usage errors exit with status 2.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

import numpy as np

from . import identities, laurent, modular, periods
from .eisenstein import ShiftPoint, eisenstein_G, slash_value
from .elliptic import FramedPeriods, dedekind_eta, fourier_coefficients, wp, wp_prime, wzeta
from .errors import PeriodforgeError
from .families import ALL_TYPES, curve_type
from .inversion import invert, modular_generators, moduli_from_frame

_PI = math.pi


def _c(z: complex):
    return [z.real, z.imag]


def parse_complex(text: str) -> complex:
    """Accept '1', '10i', '0.2+1.1i', '1j', '-2.5-0.3j'."""
    s = text.strip().replace(" ", "").replace("i", "j")
    if s.endswith("j") and not any(ch in s[1:-1] for ch in "+-") and s[:-1] in ("", "+", "-"):
        s = s[:-1] + "1j"
    try:
        return complex(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse complex number {text!r}") from None


def _frame(args) -> FramedPeriods:
    return FramedPeriods(args.omega0, args.omega1)


def _emit(obj) -> None:
    print(json.dumps(obj, indent=1))


# -- subcommand handlers -----------------------------------------------------

def cmd_eval(args):
    t = curve_type(args.type) if args.type else None
    w = _frame(args)
    z = args.z if args.z is not None else 0.0
    if args.fn == "wp":
        val = wp(z, w)
    elif args.fn == "wpprime":
        val = wp_prime(z, w)
    elif args.fn == "wzeta":
        val = wzeta(z, w)
    elif args.fn == "eta":
        val = dedekind_eta(w.tau)
    elif args.fn == "G":
        if args.weight is None:
            raise SystemExit2("--weight is required for fn=G")
        r0, r1 = (Fraction(part) for part in (args.shift or "0,0").split(","))
        val = eisenstein_G(args.weight, ShiftPoint(r0, r1), w)
    else:
        raise SystemExit2(f"unknown fn {args.fn}")
    _emit({"fn": args.fn, "type": t.key if t else None, "z": _c(complex(z)),
           "value": _c(val)})
    return 0


def cmd_invert(args):
    t = curve_type(args.type)
    res = invert(t, _frame(args))
    _emit({"type": t.key, "g_s": _c(res.g.gs), "g_l": _c(res.g.gl),
           "diagnostics": {k: (v if not isinstance(v, float) else v)
                           for k, v in res.diagnostics.items()}})
    return 0


def cmd_periods(args):
    t = curve_type(args.type)
    g = (args.gs, args.gl)
    if args.method == "agm":
        if t.key != "a2":
            raise SystemExit2("--method agm is only available for type a2")
        pr = periods.periods_agm_a2(g)
    else:
        pr = periods.periods_newton(t, g)
    _emit({"type": t.key, "method": pr.method,
           "omega0": _c(pr.frame.omega0), "omega1": _c(pr.frame.omega1),
           "tau": _c(pr.frame.tau), "residual": pr.residual,
           "reduced": pr.reduced})
    return 0


def cmd_series(args):
    t = curve_type(args.type)
    sol = laurent.solve_formal(t, args.infinity, order=args.order)
    if args.format == "csv":
        sys.stdout.write(sol.to_csv())
    else:
        print(sol.to_json())
    return 0


_QEXP_FORMS = {
    "e4": ("a2", "e4"), "e6": ("a2", "e6"),
    "alpha2": ("b2", "alpha2"), "beta4": ("b2", "beta4"),
    "alpha1": ("g2", "alpha1"), "beta3": ("g2", "beta3"),
}


def _qexp_fn(expr: str):
    if expr in _QEXP_FORMS:
        key, name = _QEXP_FORMS[expr]
        t = curve_type(key)
        return lambda tau: modular_generators(t, FramedPeriods(1.0, tau))[name]
    if expr == "eta24":
        return lambda tau: dedekind_eta(tau) ** 24
    if expr == "eta24_over_q":
        return lambda tau: dedekind_eta(tau) ** 24 * np.exp(-2j * _PI * tau)
    if expr.startswith("lambda"):
        n = int(expr[len("lambda"):])
        return lambda tau: (dedekind_eta(tau) * dedekind_eta(n * tau)) ** (24 // (n + 1))
    raise SystemExit2(f"unknown expression {expr!r}")


def cmd_qexp(args):
    f = _qexp_fn(args.expr)
    qs = fourier_coefficients(f, args.nmax, height=args.height)
    _emit({"expr": args.expr, "nmax": args.nmax,
           "coefficients": [_c(c) for c in qs.coefficients]})
    return 0


def cmd_cusp(args):
    t = curve_type(args.type)
    ws, wl = t.frame_weight_gs, t.frame_weight_gl
    gamma = args.which
    gs_val = slash_value(lambda fr: moduli_from_frame(t, fr)[0], ws, gamma, args.height)
    gl_val = slash_value(lambda fr: moduli_from_frame(t, fr)[1], wl, gamma, args.height)
    expected = _CUSP_TABLE[(t.key, gamma)]
    _emit({"type": t.key, "cusp": gamma, "height": args.height,
           "g_s": _c(gs_val), "g_l": _c(gl_val),
           "expected_g_s": expected[0], "expected_g_l": expected[1],
           "max_abs_err": max(abs(gs_val - _expr_val(expected[0])),
                              abs(gl_val - _expr_val(expected[1])))})
    return 0


# cusp values of (omega0^w gs, omega0^w gl); the g2 entry at the identity cusp
# is the value forced by gl = 2 gs^3 - G_3(omega0/3) (both summands are
# pinned by the weight-3 row of the cusp table)
_CUSP_TABLE = {
    ("a2", "E"): ("pi^4/12", "pi^6/216"),
    ("a2", "S"): ("pi^4/12", "pi^6/216"),
    ("b2", "E"): ("pi^2", "-pi^4/8"),
    ("b2", "S"): ("-pi^2/2", "pi^4/32"),
    ("g2", "E"): ("pi/sqrt(3)", "-2*pi^3/(3*sqrt(3))"),
    ("g2", "S"): ("-i*pi/3", "2*i*pi^3/27"),
}


def _expr_val(expr: str) -> complex:
    return complex(eval(expr.replace("^", "**"),  # noqa: S307 - fixed table strings
                        {"pi": math.pi, "sqrt": math.sqrt, "i": 1j}))


def cmd_verify(args):
    suite = args.suite
    rng_seed = args.seed
    tol = args.tol
    report = {"suite": suite, "checks": []}
    if suite == "monodromy":
        report["checks"] = _verify_monodromy(rng_seed)
    elif suite == "cusps":
        report["checks"] = _verify_cusps(tol or 1e-6)
    elif suite == "identities":
        samples = identities.sample_frames(20, seed=rng_seed)
        checks = []
        for t in ALL_TYPES:
            checks += identities.verify_component_identities(t, samples, tol or 1e-8)
            checks += identities.verify_discriminant_eta(t, samples, tol or 1e-8)
            checks += identities.lambda_character_check(t)
        checks += identities.verify_eta_quotients(samples, tol or 1e-8)
        checks += identities.component_fourier_checks()
        report["checks"] = checks
    elif suite == "roundtrip":
        report["checks"] = _verify_roundtrip(rng_seed, args.count, tol or 1e-9)
    elif suite == "laurent":
        report["checks"] = _verify_laurent()
    else:
        raise SystemExit2(f"unknown suite {suite}")
    ok = all(c.get("pass", False) for c in report["checks"])
    report["pass"] = ok
    _emit(report)
    return 0 if ok else 1


def _verify_monodromy(seed):
    checks = []
    rng = np.random.default_rng(seed)
    expected_delta = {"a2": modular.Mat2Z(0, 1, -1, 0),
                      "b2": modular.Mat2Z(-1, 0, 0, -1),
                      "g2": modular.Mat2Z(1, 0, 0, 1)}
    for t in ALL_TYPES:
        a, b = modular.generators(t)
        lhs = modular.evaluate_word(t, ["a", "b"] * (t.p // 2) + (["a"] if t.p % 2 else []))
        rhs = modular.evaluate_word(t, ["b", "a"] * (t.p // 2) + (["b"] if t.p % 2 else []))
        checks.append({"id": f"{t.key}_braid", "pass": lhs == rhs})
        checks.append({"id": f"{t.key}_center", "pass": (a @ b) ** t.k == modular.IDENTITY})
        checks.append({"id": f"{t.key}_fundamental",
                       "pass": modular.fundamental_element(t) == expected_delta[t.key]})
        member = all(modular.is_in_gamma1(t, modular.evaluate_word(
            t, modular.random_word(t, rng, 20))) for _ in range(1000))
        checks.append({"id": f"{t.key}_membership_1000_words", "pass": member})
    return checks


def _verify_cusps(tol):
    checks = []
    for t in ALL_TYPES:
        for gamma in ("E", "S"):
            expected = _CUSP_TABLE[(t.key, gamma)]
            gs = slash_value(lambda fr: moduli_from_frame(t, fr)[0],
                             t.frame_weight_gs, gamma)
            gl = slash_value(lambda fr: moduli_from_frame(t, fr)[1],
                             t.frame_weight_gl, gamma)
            err = max(abs(gs - _expr_val(expected[0])), abs(gl - _expr_val(expected[1])))
            checks.append({"id": f"{t.key}_cusp_{gamma}", "max_abs_err": err,
                           "pass": bool(err < tol)})
    return checks


def _verify_roundtrip(seed, count, tol):
    rng = np.random.default_rng(seed)
    checks = []
    for t in ALL_TYPES:
        worst = 0.0
        matched = True
        for _ in range(count):
            tau = complex(rng.uniform(-0.45, 0.45), rng.uniform(0.6, 1.6))
            w0 = rng.uniform(0.9, 1.1) * np.exp(1j * rng.uniform(-0.4, 0.4))
            w = FramedPeriods(w0, w0 * tau)
            g = moduli_from_frame(t, w)
            pr = periods.periods_newton(t, g)
            worst = max(worst, pr.residual)
            if modular.frame_equivalence(t, pr.frame, w, tol=1e-6) is None:
                matched = False
        checks.append({"id": f"{t.key}_roundtrip_{count}", "max_rel_err": worst,
                       "pass": bool(matched and worst < tol)})
    return checks


def _verify_laurent():
    from .reference_series import REFERENCE_EXPANSIONS
    checks = []
    for (key, infinity), (x_ref, y_ref) in REFERENCE_EXPANSIONS.items():
        t = curve_type(key)
        sol = laurent.solve_formal(t, infinity, order=8)
        ok = all(sol.x.get(p) == t.gpoly(poly) for p, poly in x_ref.items()) \
            and all(sol.y.get(p) == t.gpoly(poly) for p, poly in y_ref.items())
        hx, hy, en = laurent.residual_check(sol)
        ok = ok and not hx.c and not hy.c and not en.c
        checks.append({"id": f"{key}_inf{infinity}_expansion", "pass": ok})
    return checks


class SystemExit2(SystemExit):
    def __init__(self, message):
        print(f"error: {message}", file=sys.stderr)
        super().__init__(2)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="periodforge", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    def add_frame_args(sp):
        sp.add_argument("--omega0", type=parse_complex, required=True)
        sp.add_argument("--omega1", type=parse_complex, required=True)

    sp = sub.add_parser("eval", help="evaluate a kernel function")
    sp.add_argument("--type", choices=["a2", "b2", "g2"])
    sp.add_argument("--fn", required=True, choices=["wp", "wpprime", "wzeta", "eta", "G"])
    sp.add_argument("--z", type=parse_complex)
    add_frame_args(sp)
    sp.add_argument("--shift", help="r0,r1 as rationals, e.g. 1/2,0")
    sp.add_argument("--weight", type=int, help="weight m for fn=G")
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("invert", help="frame -> moduli")
    sp.add_argument("--type", required=True, choices=["a2", "b2", "g2"])
    add_frame_args(sp)
    sp.set_defaults(func=cmd_invert)

    sp = sub.add_parser("periods", help="moduli -> frame")
    sp.add_argument("--type", required=True, choices=["a2", "b2", "g2"])
    sp.add_argument("--gs", type=parse_complex, required=True)
    sp.add_argument("--gl", type=parse_complex, required=True)
    sp.add_argument("--method", choices=["newton", "agm"], default="newton")
    sp.set_defaults(func=cmd_periods)

    sp = sub.add_parser("series", help="Laurent coefficient tables")
    sp.add_argument("--type", required=True, choices=["a2", "b2", "g2"])
    sp.add_argument("--infinity", type=int, default=1)
    sp.add_argument("--order", type=int, default=16)
    sp.add_argument("--format", choices=["csv", "json"], default="json")
    sp.set_defaults(func=cmd_series)

    sp = sub.add_parser("qexp", help="Fourier coefficients")
    sp.add_argument("--expr", required=True)
    sp.add_argument("--nmax", type=int, default=8)
    sp.add_argument("--height", type=float, default=0.3)
    sp.set_defaults(func=cmd_qexp)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("--suite", required=True,
                    choices=["monodromy", "cusps", "identities", "roundtrip", "laurent"])
    sp.add_argument("--tol", type=float)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=50)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("cusp", help="cusp-value table reproduction")
    sp.add_argument("--type", required=True, choices=["a2", "b2", "g2"])
    sp.add_argument("--which", required=True, choices=["E", "S"])
    sp.add_argument("--height", type=float, default=10.0)
    sp.set_defaults(func=cmd_cusp)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors already
        return int(exc.code or 0)
    try:
        return args.func(args)
    except SystemExit2 as exc:
        return int(exc.code)
    except PeriodforgeError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}))
        return 1


if __name__ == "__main__":
    sys.exit(main())
