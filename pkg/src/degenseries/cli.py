"""Command line: ``degen compute | table | series | verify``.

Exit status is 0 on success, 1 when a verification record fails and 2 for
bad arguments or parameters outside a formula's domain.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import __version__, families
from .basics import degenerate_exp, degenerate_log, falling_factorial_lambda
from .errors import DegenerateError, UsageError
from .exact import LambdaPoly, format_value, parse_rational
from .stirling import s1_lambda, s2_lambda
from .verify import SUITES, SuiteConfig, default_seed, report_json, run_suites

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

COMPUTE_FAMILIES = ("ffl", "s1", "s2", "bell", "fubini", "bernoulli", "euler", "polybernoulli", "dlog")
TABLE_FAMILIES = ("s1", "s2", "bell", "fubini")
SERIES_GFS = ("dexp", "dlog", "bernoulli", "fubini", "euler", "polybernoulli")


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except UsageError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rational_list(text: str) -> tuple[Fraction, ...]:
    return tuple(_rational(t) for t in text.split(",") if t.strip())


def _require(args, *names: str) -> None:
    flags = {"lam": "lambda"}
    missing = [f"--{flags.get(n, n)}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.family}: missing {', '.join(missing)}")


def compute_value(args) -> Fraction | LambdaPoly:
    fam = args.family
    lam = args.lam
    if fam == "ffl":
        _require(args, "x", "n", "lam")
        return falling_factorial_lambda(args.x, args.n, lam)
    if fam in ("s1", "s2"):
        _require(args, "n", "k")
        value = (s1_lambda if fam == "s1" else s2_lambda)(args.n, args.k)
        return value if lam is None else value(lam)
    if fam in ("bell", "fubini"):
        _require(args, "n", "x")
        poly = (families.bell_poly if fam == "bell" else families.fubini_poly)(args.n)
        return poly(args.x, lam)
    if fam == "dlog":
        _require(args, "n")
        return degenerate_log(LambdaPoly.symbol() if lam is None else lam, args.n).coeffs[args.n]
    _require(args, "n", "lam")
    x = args.x if args.x is not None else Fraction(0)
    if fam == "bernoulli":
        return families.bernoulli_carlitz(args.n, lam, x)
    if fam == "euler":
        return families.euler_degenerate(args.n, lam, x)
    _require(args, "r")
    return families.poly_bernoulli(families.PolyBernoulliParams(args.n, args.r, lam, x))


def cmd_compute(args, out) -> int:
    print(format_value(compute_value(args)), file=out)
    return EXIT_OK


def table_rows(family: str, max_n: int) -> list[list[str]]:
    if max_n < 0:
        raise UsageError("--max-n must be non-negative")
    rows = []
    for n in range(max_n + 1):
        if family == "s1":
            row = [s1_lambda(n, k) for k in range(n + 1)]
        elif family in ("s2", "bell"):
            row = list(families.bell_poly(n).coeffs) if family == "bell" else [s2_lambda(n, k) for k in range(n + 1)]
        else:
            row = list(families.fubini_poly(n).coeffs)
        rows.append([format_value(v) for v in row])
    return rows


def cmd_table(args, out) -> int:
    rows = table_rows(args.family, args.max_n)
    if args.format == "json":
        text = json.dumps({"family": args.family, "max_n": args.max_n, "rows": rows}, indent=2,
                          ensure_ascii=False) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\r\n")
        writer.writerow(["n"] + [str(k) for k in range(args.max_n + 1)])
        for n, row in enumerate(rows):
            writer.writerow([n] + row + [""] * (args.max_n - n))
        text = buf.getvalue()
    _emit(text, args.out, out)
    return EXIT_OK


def series_coeffs(args) -> list:
    N, lam, x = args.order, args.lam, args.x
    if N < 0:
        raise UsageError("--order must be non-negative")
    if args.gf == "dlog":
        return list(degenerate_log(LambdaPoly.symbol() if lam is None else lam, N).coeffs)
    if lam is None:
        raise UsageError(f"{args.gf}: missing --lambda")
    if args.gf == "dexp":
        return list(degenerate_exp(Fraction(1) if x is None else x, lam, N).coeffs)
    if args.gf == "fubini":
        return list(families.fubini_gf_series(lam, Fraction(1) if x is None else x, N).coeffs)
    x = Fraction(0) if x is None else x
    if args.gf == "bernoulli":
        return list(families.bernoulli_gf_series(lam, x, N).coeffs)
    if args.gf == "euler":
        return list(families.euler_gf_series(lam, x, N).coeffs)
    if args.r is None:
        raise UsageError("polybernoulli: missing --r")
    return list(families.poly_bernoulli_gf_series(args.r, lam, x, N).coeffs)


def cmd_series(args, out) -> int:
    coeffs = [format_value(c) for c in series_coeffs(args)]
    if args.format == "json":
        text = json.dumps(coeffs) + "\n"
    else:
        text = ", ".join(coeffs) + "\n"
    _emit(text, args.out, out)
    return EXIT_OK


def cmd_verify(args, out, registry=None) -> int:
    cfg = SuiteConfig(
        suites=tuple(s.strip() for s in args.suites.split(",") if s.strip()),
        max_n=args.max_n,
        truncation=args.truncation,
        lambda_samples=args.lambda_samples,
        seed=args.seed,
        output_path=args.out,
        inject_fault=args.inject_fault,
    )
    report = run_suites(cfg, registry)
    text = report_json(report)
    summary = report["summary"]
    line = f"{summary['passed']}/{summary['total']} checks passed, {summary['failures']} failures"
    if args.out:
        _emit(text, args.out, out)
        print(line, file=out)
    else:
        out.write(text)
        print(line, file=sys.stderr)
    return EXIT_FAIL if summary["failures"] else EXIT_OK


def _emit(text: str, path: str | None, out) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        out.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="degen", description="Exact degenerate special numbers and identity checks.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="print one exact value")
    p.add_argument("family", choices=COMPUTE_FAMILIES)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--x", type=_rational)
    p.add_argument("--lambda", dest="lam", type=_rational, help="omit for a result symbolic in L where possible")
    p.add_argument("--r", type=int, help="polylogarithm order for polybernoulli")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("table", help="triangular table of symbolic coefficients")
    p.add_argument("family", choices=TABLE_FAMILIES)
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("series", help="coefficients of a generating function")
    p.add_argument("gf", choices=SERIES_GFS)
    p.add_argument("--order", type=int, default=16)
    p.add_argument("--lambda", dest="lam", type=_rational)
    p.add_argument("--x", type=_rational)
    p.add_argument("--r", type=int)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("verify", help="run identity suites and write a JSON report")
    p.add_argument("--suites", default="all", help=f"comma list from {', '.join(SUITES)}, all")
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--truncation", type=int, default=16)
    p.add_argument("--lambda-samples", type=_rational_list, default=SuiteConfig.__dataclass_fields__[
        "lambda_samples"].default)
    p.add_argument("--seed", type=int, default=None, help="defaults to $DEGEN_SEED or a fixed seed")
    p.add_argument("--out", help="report path; without it the report goes to stdout")
    p.add_argument("--inject-fault", metavar="ID", help="harness self-test: perturb one identity's right side")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None, out=None, registry=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "verify" and args.seed is None:
            args.seed = default_seed()
        if args.command == "verify":
            return cmd_verify(args, out, registry)
        return args.func(args, out)
    except DegenerateError as exc:
        print(f"degen: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"degen: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
