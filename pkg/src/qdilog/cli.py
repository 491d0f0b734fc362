"""Command line front end.

Complex arguments use the form ``a+bi`` without spaces (``0.2+0.5i``,
``-1``, ``3i``, ``-i``, ``1e-3-2e-1i``). Every float is printed with 17
significant digits so that it parses back to the same binary64 value.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 domain
error, 4 non-convergence.
"""
from __future__ import annotations

import argparse
import cmath
import csv
import json
import math
import re
import sys

from . import borel, faddeev, laplace, verify
from .errors import DomainError, NonConvergence
from .quadrature import QuadratureConfig

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN, EXIT_NONCONV = 0, 1, 2, 3, 4

_NUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_FULL = re.compile(rf"(?P<re>[+-]?{_NUM})(?:(?P<ims>[+-])(?P<im>{_NUM})?i)?")
_IMAG = re.compile(rf"(?P<ims>[+-]?)(?P<im>{_NUM})?i")


def parse_complex(text: str) -> complex:
    """Parse ``a``, ``bi`` or ``a+bi``; raises ValueError otherwise."""
    m = _FULL.fullmatch(text)
    if m:
        re_part = float(m["re"])
        if m["ims"] is None:
            return complex(re_part, 0.0)
        im = float(m["im"]) if m["im"] else 1.0
        return complex(re_part, -im if m["ims"] == "-" else im)
    m = _IMAG.fullmatch(text)
    if m:
        im = float(m["im"]) if m["im"] else 1.0
        return complex(0.0, -im if m["ims"] == "-" else im)
    raise ValueError(f"not a complex number of the form a+bi: {text!r}")


def _complex_arg(text: str) -> complex:
    try:
        return parse_complex(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def fmt_float(x: float) -> str:
    return "%.17g" % x


def fmt_complex(v) -> str:
    v = complex(v)
    return f"{fmt_float(v.real)}{'+' if math.copysign(1, v.imag) > 0 else '-'}{fmt_float(abs(v.imag))}i"


def _emit(rows: list[dict], fmt: str, out=None):
    out = out or sys.stdout
    if fmt == "json":
        json.dump(rows, out)
        out.write("\n")
        return
    if not rows:
        return
    writer = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)


def _cfg() -> QuadratureConfig:
    return QuadratureConfig.from_env()


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def _bparam(args) -> faddeev.BParam:
    if args.b is not None:
        return faddeev.BParam.from_b(args.b)
    if args.tau is not None:
        return faddeev.BParam.from_tau(args.tau)
    raise DomainError("phi/logphi need --b or --tau")


def cmd_eval(args) -> int:
    cfg = _cfg()
    what, method = args.what, args.method
    z = args.z if args.z is not None else 0j
    record = {"what": what}
    if what == "G":
        if args.xi is None:
            raise DomainError("--what G needs --xi")
        value = borel.borel_G(args.xi, z, cfg)
        record.update(z=fmt_complex(z), xi=fmt_complex(args.xi), method="accelerated")
    elif what == "laplace":
        tau = _need(args.tau, "--tau")
        value = laplace.laplace_ray(z, tau, laplace.RaySpec(args.theta), cfg)
        record.update(z=fmt_complex(z), tau=fmt_complex(tau), theta=fmt_float(args.theta),
                      method="gauss-legendre")
    elif what == "series":
        tau = _need(args.tau, "--tau")
        value = laplace.truncated_series(z, tau, args.N)
        record.update(z=fmt_complex(z), tau=fmt_complex(tau), N=args.N, method="series")
    else:
        p = _bparam(args)
        m = faddeev.EvalMethod(method) if method else faddeev.default_method(p)
        w = args.w if args.w is not None else z / (2 * math.pi * p.b)
        log_value = faddeev.log_phi(w, p, m, cfg)
        value = log_value if what == "logphi" else cmath.exp(log_value)
        record.update(w=fmt_complex(w), b=fmt_complex(p.b), tau=fmt_complex(p.tau),
                      method=m.value)
    record.update(re=fmt_float(value.real), im=fmt_float(value.imag),
                  value=fmt_complex(value), tol=fmt_float(cfg.tol))
    _emit([record], args.format)
    return EXIT_OK


def _need(v, flag):
    if v is None:
        raise DomainError(f"missing {flag}")
    return v


def cmd_poles(args) -> int:
    rows = [
        {
            "n": r.n,
            "m": r.m,
            "re": fmt_float(r.location.real),
            "im": fmt_float(r.location.imag),
            "res_re": fmt_float(r.residue.real),
            "res_im": fmt_float(r.residue.imag),
        }
        for r in borel.enumerate_poles(args.z, args.radius)
    ]
    if args.format == "csv" and not rows:
        print("n,m,re,im,res_re,res_im")
        return EXIT_OK
    _emit(rows, args.format)
    return EXIT_OK


def cmd_stokes(args) -> int:
    cfg = _cfg()
    rows = []
    for m in range(args.M + 1):
        jump = laplace.stokes_jump(args.z, args.tau, m)
        num = laplace.stokes_difference(args.z, args.tau, m, cfg)
        rows.append({
            "m": m,
            "jump_re": fmt_float(jump.real),
            "jump_im": fmt_float(jump.imag),
            "numeric_re": fmt_float(num.real),
            "numeric_im": fmt_float(num.imag),
            "abs_diff": fmt_float(abs(num - jump)),
        })
    _emit(rows, args.format)
    return EXIT_OK


def cmd_verify(args) -> int:
    report = verify.run_suite([args.suite], _cfg())
    text = report.to_json(indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
        for c in report.checks:
            status = "PASS" if c.passed else "FAIL"
            print(f"{status} {c.name} residual={c.max_residual} tol={c.tol}")
    else:
        print(text)
    return EXIT_OK if report.passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qdilog",
        description="Quantum dilogarithm, its Borel transform and Laplace transforms.",
        epilog="Environment: QDILOG_TOL overrides the default tolerance 1e-10.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate one quantity",
                       description="Print one record (CSV with header, or JSON): inputs, "
                                   "method, re, im, value as a+bi, tol.")
    p.add_argument("--what", choices=["phi", "logphi", "G", "laplace", "series"], required=True)
    p.add_argument("--method", choices=[m.value for m in faddeev.EvalMethod])
    p.add_argument("--z", type=_complex_arg)
    p.add_argument("--w", type=_complex_arg, help="argument of Phi_b (default z/(2 pi b))")
    p.add_argument("--tau", type=_complex_arg)
    p.add_argument("--b", type=_complex_arg)
    p.add_argument("--xi", type=_complex_arg)
    p.add_argument("--theta", type=float, default=0.0)
    p.add_argument("--N", type=int, default=1)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("poles", help="list poles of G(., z)",
                       description="Columns n,m,re,im,res_re,res_im: index pair, location "
                                   "n(z + (2m+1) pi i) and residue. Sorted by modulus, then "
                                   "argument.")
    p.add_argument("--z", type=_complex_arg, required=True)
    p.add_argument("--radius", type=float, required=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_poles)

    p = sub.add_parser("stokes", help="Stokes jump table",
                       description="Columns m, closed-form jump, numeric ray difference "
                                   "(cone m+1 minus cone m), abs diff.")
    p.add_argument("--z", type=_complex_arg, required=True)
    p.add_argument("--tau", type=_complex_arg, required=True)
    p.add_argument("--M", type=int, default=3)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_stokes)

    p = sub.add_parser("verify", help="run the verification suite",
                       description="JSON report {suite, checks:[{name, max_residual, tol, "
                                   "pass, seconds, worst_params}], pass}.")
    p.add_argument("--suite", choices=list(verify.SUITES), default="fast")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)
    return parser


_COMPLEX_FLAGS = {"--z", "--w", "--tau", "--b", "--xi"}


def _attach_values(argv: list[str]) -> list[str]:
    # argparse takes "-1+0.5i" for an option; glue it to its flag instead
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in _COMPLEX_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = _attach_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _cfg()
    except DomainError as exc:
        print(f"qdilog: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"qdilog: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except NonConvergence as exc:
        print(f"qdilog: no convergence: {exc}", file=sys.stderr)
        return EXIT_NONCONV


if __name__ == "__main__":
    sys.exit(main())
