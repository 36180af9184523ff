"""Command-line front end.

Subcommands::

    ellint eval eisenstein --tau i --s 2
    ellint eval wp --tau i --z 0.3+0.1i
    ellint scan-s --tau i --re -5 0 --im 0 0 --steps 51 1 --output scan.csv
    ellint convert --value 0 --from square --to row_first --tau i
    ellint validate --profile quick --output report.json

Complex numbers are written ``a+bi``; ``i`` alone is ``0+1i``.  Exit codes:
0 success, 1 usage, 2 domain, 3 accuracy (or failed checks), 4 I/O.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import re
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .eisenstein import continue_entire, convention_offset, convert_convention, eisenstein_tilde
from .errors import AccuracyError, EllintError
from .lattice import SummationConvention
from .validation import GROUPS, default_threads, run_validation
from .weierstrass import wp, wzeta

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_ACCURACY, EXIT_IO = 0, 1, 2, 3, 4
MAX_GRID = 10**6

_NUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX_RE = re.compile(
    rf"^(?P<re>[+-]?{_NUM})?(?:(?P<sign>[+-])?(?P<im>{_NUM})?i)?$"
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_complex(text: str) -> complex:
    """Parse ``a+bi`` literals: ``i``, ``-2i``, ``0.3+1.2i``, ``1e-3``.

    >>> parse_complex("0.5-i")
    (0.5-1j)
    """
    t = text.strip().replace(" ", "")
    m = _COMPLEX_RE.match(t)
    if not t or m is None:
        raise argparse.ArgumentTypeError(f"not a complex literal: {text!r}")
    re_part = float(m.group("re")) if m.group("re") else 0.0
    if "i" not in t:
        return complex(re_part, 0.0)
    sign = m.group("sign")
    if m.group("re") and sign is None:
        # "2i" was swallowed as the real part; reparse as pure imaginary
        if m.group("im") is None:
            return complex(0.0, re_part)
        raise argparse.ArgumentTypeError(f"not a complex literal: {text!r}")
    im = float(m.group("im")) if m.group("im") else 1.0
    return complex(re_part, -im if sign == "-" else im)


def fmt(x: float) -> str:
    """Fixed 17-significant-digit rendering used by every output path."""
    return format(float(x) + 0.0, ".17g")


def _cplx(z: complex) -> dict:
    return {"re": float(np.real(z)), "im": float(np.imag(z))}


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


# ---------------------------------------------------------------- commands


def cmd_eval(args) -> int:
    if args.kind == "eisenstein":
        if args.s is None:
            raise UsageError("eval eisenstein needs --s")
        s = args.s
        method = args.method
        if method == "auto":
            method = "axis" if (s.real > 2 or s == 2) else "contour"
        if method == "axis":
            res = eisenstein_tilde(args.tau, s, args.tol)
        else:
            res = continue_entire(args.tau, s, args.tol)
        record = {
            "kind": "eisenstein", "tau": _cplx(args.tau), "s": _cplx(s), "value": _cplx(res.value),
            "error_estimate": res.error_estimate, "method": res.method, "reduced": res.reduced,
        }
    else:
        if args.z is None:
            raise UsageError(f"eval {args.kind} needs --z")
        fn = wp if args.kind == "wp" else wzeta
        res = fn(args.z, args.tau, args.tol)
        record = {
            "kind": args.kind, "tau": _cplx(args.tau), "z": _cplx(args.z), "value": _cplx(res.value),
            "error_estimate": res.error_estimate, "method": "axis_integral",
        }
    if args.json:
        record["schema"] = 1
        print(_dump(record))
    else:
        v = record["value"]
        print(f"value {fmt(v['re'])} {fmt(v['im'])}")
        print(f"error_estimate {fmt(record['error_estimate'])}")
        print(f"method {record['method']}")
    return EXIT_OK


def _scan_point(tau, s, tol):
    try:
        r = continue_entire(tau, s, tol)
        return r.value, r.error_estimate, False
    except AccuracyError:
        return complex(math.nan, math.nan), math.inf, True


def cmd_scan_s(args) -> int:
    nre, nim = args.steps
    if nre < 1 or nim < 1 or nre * nim > MAX_GRID:
        raise UsageError(f"grid must have between 1 and {MAX_GRID} points")
    res_ = np.linspace(args.re[0], args.re[1], nre)
    ims = np.linspace(args.im[0], args.im[1], nim)
    pts = [complex(a, b) for b in ims for a in res_]
    threads = args.threads or default_threads()
    if threads == 1:
        vals = [_scan_point(args.tau, s, args.tol) for s in pts]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            vals = list(pool.map(lambda s: _scan_point(args.tau, s, args.tol), pts))
    with open(args.output, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["re_s", "im_s", "re_val", "im_val", "err"])
        for s, (v, e, _) in zip(pts, vals):
            w.writerow([fmt(s.real), fmt(s.imag), fmt(v.real), fmt(v.imag), fmt(e)])
    failed = sum(f for *_, f in vals)
    if failed:
        print(f"{failed} grid points did not reach tolerance", file=sys.stderr)
        return EXIT_ACCURACY
    return EXIT_OK


def _convention(name: str, alpha) -> SummationConvention:
    if name == "rectangle":
        if alpha is None:
            raise UsageError("rectangle convention needs --alpha")
        return SummationConvention.rectangle(alpha)
    return SummationConvention(name)


def cmd_convert(args) -> int:
    src = _convention(args.src, args.alpha if args.src == "rectangle" else None)
    dst = _convention(args.dst, args.alpha if args.dst == "rectangle" else None)
    result = convert_convention(args.value, src, dst, args.tau)
    offset = convention_offset(dst, args.tau) - convention_offset(src, args.tau)
    if args.json:
        print(_dump({"schema": 1, "offset": _cplx(offset), "result": _cplx(result)}))
    else:
        print(f"offset {fmt(offset.real)} {fmt(offset.imag)}")
        print(f"result {fmt(result.real)} {fmt(result.imag)}")
    return EXIT_OK


def cmd_validate(args) -> int:
    threads = args.threads or default_threads()
    groups = None if not args.group else args.group
    report = run_validation(args.profile, threads, groups)
    text = report.to_json(timings=not args.no_timings)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    for num, checks in report.groups().items():
        ok = all(c.passed for c in checks)
        print(f"[{'PASS' if ok else 'FAIL'}] {num:2d} {GROUPS[num][0]}", file=sys.stderr)
    return EXIT_OK if report.all_passed else EXIT_ACCURACY


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ellint", description="Eisenstein series and Weierstrass functions from plane-wave integrals.")
    p.add_argument("--threads", type=int, default=None, help="worker threads (default: $ELLINT_THREADS or all cores)")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    e = sub.add_parser("eval", help="evaluate one value")
    e.add_argument("kind", choices=["eisenstein", "wp", "wzeta"])
    e.add_argument("--tau", type=parse_complex, required=True)
    e.add_argument("--s", type=parse_complex)
    e.add_argument("--z", type=parse_complex)
    e.add_argument("--method", choices=["auto", "axis", "contour"], default="auto")
    e.add_argument("--tol", type=float, default=1e-11)
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_eval)

    sc = sub.add_parser("scan-s", help="tabulate the continuation over an s grid")
    sc.add_argument("--tau", type=parse_complex, required=True)
    sc.add_argument("--re", type=float, nargs=2, required=True, metavar=("LO", "HI"))
    sc.add_argument("--im", type=float, nargs=2, default=[0.0, 0.0], metavar=("LO", "HI"))
    sc.add_argument("--steps", type=int, nargs=2, required=True, metavar=("NRE", "NIM"))
    sc.add_argument("--tol", type=float, default=1e-10)
    sc.add_argument("--output", required=True)
    sc.set_defaults(func=cmd_scan_s)

    c = sub.add_parser("convert", help="change the summation convention of an s=2 value")
    kinds = list(SummationConvention.KINDS)
    c.add_argument("--value", type=parse_complex, required=True)
    c.add_argument("--from", dest="src", choices=kinds, required=True)
    c.add_argument("--to", dest="dst", choices=kinds, required=True)
    c.add_argument("--tau", type=parse_complex, required=True)
    c.add_argument("--alpha", type=float)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_convert)

    v = sub.add_parser("validate", help="run the cross-validation suite")
    v.add_argument("--profile", choices=["quick", "full"], default="quick")
    v.add_argument("--output")
    v.add_argument("--group", type=int, action="append", choices=sorted(GROUPS))
    v.add_argument("--no-timings", action="store_true", help="omit runtimes so reports are byte-stable")
    v.set_defaults(func=cmd_validate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads is not None and args.threads < 1:
        parser.error("--threads must be >= 1")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"ellint: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AccuracyError as exc:
        print(f"ellint: accuracy not reached: {exc}", file=sys.stderr)
        return EXIT_ACCURACY
    except (EllintError, ValueError) as exc:
        print(f"ellint: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"ellint: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
