"""Command-line interface: ``pearson-bf compute`` and ``pearson-bf simulate``."""

from __future__ import annotations

import argparse
import logging
import sys
import time

from . import __version__, _backend
from .bayes import (
    Alpha,
    BayesFactor,
    Direction,
    SummaryStats,
    bf_percent_error,
    bic_bf01,
    flip,
    pbf10,
    pbf10_general,
    tail_factor,
)
from .errors import DomainError
from .gamma import QuotientMethod, quotient
from .sim import METHODS, SimConfig, emit_csv, first_below, run_grid

EXIT_USAGE = 2
EXIT_BAD_METHOD = 3
EXIT_BIC_NEEDS_N = 4
EXIT_ALPHA_NOT_ANALYTIC = 5
EXIT_DOMAIN = 6
EXIT_IO = 7

COMPUTE_METHODS = ("analytic", "wendel", "stirling", "frame", "bic", "all")


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # one line on stderr, no usage dump
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pearson-bf",
                     description="Pearson Bayes factors for two-sample t-tests.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("compute", help="Bayes factor from t and degrees of freedom")
    c.add_argument("--t", type=float, required=True, help="observed t statistic")
    c.add_argument("--df", type=float, required=True, help="degrees of freedom (nu)")
    c.add_argument("--method", default="analytic",
                   help="analytic, wendel, stirling, frame, bic or all (default: analytic)")
    c.add_argument("--alpha", type=float, default=None,
                   help="Pearson prior scale (> -1); analytic method only")
    c.add_argument("--n", type=int, default=None, help="total sample size N (needed for bic)")
    c.add_argument("--direction", choices=("10", "01"), default="10",
                   help="report BF10 (H1 over H0, default) or BF01")
    c.add_argument("--digits", type=int, default=4, help="decimal places (default: 4)")

    s = sub.add_parser("simulate", help="Monte Carlo percent-error study, written as CSV")
    s.add_argument("--n-min", type=int, default=4)
    s.add_argument("--n-max", type=int, default=100)
    s.add_argument("--iters", type=int, default=1000)
    s.add_argument("--seed", type=int, required=True, help="master seed (unsigned 64-bit)")
    s.add_argument("--out", required=True, help="CSV output path")
    s.add_argument("--methods", default=",".join(METHODS),
                   help="comma-separated subset of wendel,stirling,frame,bic")
    s.add_argument("--threads", type=int, default=1)
    return parser


def _fmt(x, digits):
    return f"{x:.{digits}f}"


def _check_compute_args(args):
    method = args.method.lower()
    if method not in COMPUTE_METHODS:
        raise CliError(f"unknown method {args.method!r}; choose from {', '.join(COMPUTE_METHODS)}",
                       EXIT_BAD_METHOD)
    if method == "bic" and args.n is None:
        raise CliError("method bic needs the total sample size --n", EXIT_BIC_NEEDS_N)
    if args.alpha is not None and method != "analytic":
        raise CliError("--alpha is only valid with --method analytic", EXIT_ALPHA_NOT_ANALYTIC)
    if args.digits < 0:
        raise CliError("--digits must be >= 0", EXIT_USAGE)
    return method


def _oriented(bf: BayesFactor, direction: Direction) -> BayesFactor:
    return bf.as_direction(direction)


def cmd_compute(args, out=None) -> int:
    out = out or sys.stdout
    method = _check_compute_args(args)
    stats = SummaryStats(args.t, args.df, args.n)
    alpha = Alpha(args.alpha) if args.alpha is not None else None
    direction = Direction(args.direction)
    digits = args.digits
    label = f"BF_{direction.value}"
    w = lambda line: print(line, file=out)

    w(f"t: {_fmt(stats.t, digits)}")
    w(f"df: {_fmt(stats.nu, digits)}")
    if stats.n_total is not None:
        w(f"n: {stats.n_total}")

    if method == "all":
        _compute_table(stats, direction, digits, w)
        return 0

    w(f"method: {method}")
    if method == "bic":
        bf10 = flip(bic_bf01(stats))
    elif alpha is not None:
        w(f"alpha: {_fmt(alpha.value, digits)}")
        bf10 = pbf10_general(stats, alpha)
    else:
        w(f"C_nu: {_fmt(quotient(stats.nu, method), digits)}")
        w(f"tail factor: {_fmt(tail_factor(stats), digits)}")
        bf10 = pbf10(stats, method)
    w(f"BF_10: {_fmt(bf10.value, digits)}")
    w(f"BF_01: {_fmt(flip(bf10).value, digits)}")
    w(f"log {label}: {_fmt(_oriented(bf10, direction).log_value, digits)}")
    return 0


def _compute_table(stats, direction, digits, w):
    label = f"BF_{direction.value}"
    w(f"tail factor: {_fmt(tail_factor(stats), digits)}")
    reference = pbf10(stats, QuotientMethod.ANALYTIC)
    rows = []
    for m in QuotientMethod:
        bf = pbf10(stats, m)
        rows.append((m.value, _fmt(quotient(stats.nu, m), digits), bf))
    if stats.n_total is not None:
        rows.append(("bic", "-", flip(bic_bf01(stats))))
    else:
        print("note: bic skipped (needs --n)", file=sys.stderr)
    header = ("method", "C_nu", "BF_10", "BF_01", f"log_{label}", "pct_error")
    table = [header]
    for name, c_nu, bf in rows:
        table.append((name, c_nu, _fmt(bf.value, digits), _fmt(flip(bf).value, digits),
                      _fmt(_oriented(bf, direction).log_value, digits),
                      _fmt(bf_percent_error(bf, reference), digits)))
    widths = [max(len(r[i]) for r in table) for i in range(len(header))]
    for r in table:
        w("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(r)).rstrip())


def cmd_simulate(args, out=None) -> int:
    out = out or sys.stdout
    methods = [m.strip().lower() for m in args.methods.split(",") if m.strip()]
    if args.threads < 1:
        raise CliError("--threads must be >= 1", EXIT_USAGE)
    try:
        config = SimConfig(seed=args.seed, n_min=args.n_min, n_max=args.n_max,
                           iterations=args.iters, methods=methods)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_DOMAIN) from None
    start = time.perf_counter()
    rows = run_grid(config, threads=args.threads)
    elapsed = time.perf_counter() - start
    try:
        emit_csv(rows, args.out)
    except OSError as exc:
        raise CliError(str(exc), EXIT_IO) from None
    print(f"{len(rows)} rows in {elapsed:.2f} s (kernel: {_backend.BACKEND})", file=sys.stderr)

    def show(n):
        return "never" if n is None else str(n)

    print(f"wrote {len(rows)} rows to {args.out}", file=out)
    print("method    first N below 1%  first N below 0.01%", file=out)
    for m in config.methods:
        print(f"{m:<9} {show(first_below(rows, m, 1.0)):<17} "
              f"{show(first_below(rows, m, 0.01))}", file=out)
    return 0


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = cmd_compute if args.command == "compute" else cmd_simulate
    try:
        return handler(args)
    except CliError as exc:
        print(f"pearson-bf: error: {exc}", file=sys.stderr)
        return exc.code
    except (DomainError, ValueError) as exc:
        print(f"pearson-bf: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
