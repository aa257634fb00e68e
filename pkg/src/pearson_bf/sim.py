"""Monte Carlo error study over a grid of total sample sizes.

For every N in [n_min, n_max] and every iteration: draw an effect size
d ~ U[0, 1), draw ceil(N/2) values from N(0, 1) and floor(N/2) from N(d, 1),
run the pooled t-test (nu = N - 2), and record the percent error of each
approximate BF10 against the exact Pearson BF10. Rows report the mean over
iterations.

Each (N, iteration) pair draws from its own substream keyed on the master
seed, and each N is reduced by one worker with exact summation, so results
do not depend on the thread count.
"""

from __future__ import annotations

import csv
import logging
import os
import statistics
from array import array
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence

from . import _backend
from .bayes import quotient_percent_error
from .gamma import QuotientMethod, log_quotient

log = logging.getLogger(__name__)

METHODS = ("wendel", "stirling", "frame", "bic")
CSV_HEADER = ("n_total", "method", "mean_percent_error", "iterations")

_LOG_C_ORDER = (QuotientMethod.ANALYTIC, QuotientMethod.WENDEL,
                QuotientMethod.STIRLING, QuotientMethod.FRAME)


@dataclass(frozen=True)
class SimConfig:
    seed: int
    n_min: int = 4
    n_max: int = 100
    iterations: int = 1000
    methods: Sequence[str] = METHODS

    def __post_init__(self):
        if not 4 <= self.n_min <= self.n_max:
            raise ValueError(f"need 4 <= n_min <= n_max, got {self.n_min}, {self.n_max}")
        if self.iterations < 1:
            raise ValueError(f"iterations must be >= 1, got {self.iterations}")
        if not 0 <= int(self.seed) < 2 ** 64:
            raise ValueError(f"seed must fit in 64 unsigned bits, got {self.seed}")
        methods = tuple(sorted({str(m).lower() for m in self.methods}))
        unknown = set(methods) - set(METHODS)
        if unknown or not methods:
            raise ValueError(f"methods must be a nonempty subset of {METHODS}, got {self.methods}")
        object.__setattr__(self, "methods", methods)


@dataclass(frozen=True)
class ErrorRow:
    n_total: int
    method: str
    mean_percent_error: float
    iterations_used: int
    median_percent_error: Optional[float] = field(default=None, compare=False)
    redraws: int = field(default=0, compare=False)


def log_quotients(nu: float) -> tuple:
    """(ln C_exact, ln C_wendel, ln C_stirling, ln C_frame) at ``nu``."""
    return tuple(log_quotient(nu, m) for m in _LOG_C_ORDER)


def run_cell(n_total: int, iterations: int, seed: int,
             methods: Sequence[str] = METHODS, median: bool = False,
             kernel=None) -> List[ErrorRow]:
    """All requested methods' mean percent error at one total sample size."""
    if n_total < 4:
        raise ValueError(f"n_total must be >= 4, got {n_total}")
    kernel = kernel or _backend.kernel
    out = array("d", bytes(8 * 4 * iterations)) if median else None
    means, redraws = kernel.run_cell(seed, n_total, iterations,
                                     log_quotients(float(n_total - 2)), out)
    if redraws:
        log.warning("N=%d: %d degenerate draw(s) redrawn", n_total, redraws)
    rows = []
    for k, name in enumerate(METHODS):
        if name not in methods:
            continue
        med = statistics.median(out[k::4]) if median else None
        rows.append(ErrorRow(n_total, name, means[k], iterations, med, redraws))
    return rows


def run_grid(config: SimConfig, threads: int = 1, median: bool = False,
             kernel=None) -> List[ErrorRow]:
    """Rows for every (N, method), sorted by N then method name."""
    sizes = range(config.n_min, config.n_max + 1)

    def cell(n):
        return run_cell(n, config.iterations, config.seed, config.methods,
                        median=median, kernel=kernel)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            cells = list(pool.map(cell, sizes))
    else:
        cells = [cell(n) for n in sizes]
    rows = [row for cell_rows in cells for row in cell_rows]
    rows.sort(key=lambda r: (r.n_total, r.method))
    return rows


def _format(x: float) -> str:
    return format(x, ".10g")


def emit_csv(rows: Iterable[ErrorRow], destination) -> None:
    """Write rows as UTF-8 CSV with LF endings.

    ``destination`` is a path or an open text stream. A median column is
    appended only when every row carries one.
    """
    rows = list(rows)
    if not rows:
        raise ValueError("no rows to write")
    with_median = all(r.median_percent_error is not None for r in rows)
    header = CSV_HEADER + (("median_percent_error",) if with_median else ())

    def write(stream):
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(header)
        for r in sorted(rows, key=lambda r: (r.n_total, r.method)):
            line = [r.n_total, r.method, _format(r.mean_percent_error), r.iterations_used]
            if with_median:
                line.append(_format(r.median_percent_error))
            writer.writerow(line)

    if hasattr(destination, "write"):
        write(destination)
        return
    path = os.fspath(destination)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            write(fh)
    except OSError as exc:
        raise OSError(f"cannot write CSV to {path}: {exc.strerror or exc}") from exc


def read_csv(source) -> List[ErrorRow]:
    """Parse a file written by :func:`emit_csv`."""
    with open(os.fspath(source), encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames[:4]) != CSV_HEADER:
            raise ValueError(f"unexpected CSV header {reader.fieldnames}")
        rows = []
        for rec in reader:
            med = rec.get("median_percent_error")
            rows.append(ErrorRow(int(rec["n_total"]), rec["method"],
                                 float(rec["mean_percent_error"]),
                                 int(rec["iterations"]),
                                 float(med) if med else None))
    return rows


def first_below(rows: Iterable[ErrorRow], method: str, threshold: float) -> Optional[int]:
    """Smallest N whose mean error is below ``threshold`` (percent), or None."""
    for r in sorted(rows, key=lambda r: r.n_total):
        if r.method == method and r.mean_percent_error < threshold:
            return r.n_total
    return None


def below_from(rows: Iterable[ErrorRow], method: str, threshold: float) -> Optional[int]:
    """Smallest N from which the error stays below ``threshold`` up to n_max."""
    start = None
    for r in sorted((r for r in rows if r.method == method), key=lambda r: r.n_total):
        if r.mean_percent_error < threshold:
            start = r.n_total if start is None else start
        else:
            start = None
    return start


def closed_form_error(n_total: int, method: str) -> float:
    """Deterministic per-iteration error of a gamma method at total size N."""
    return quotient_percent_error(float(n_total - 2), method)


__all__ = [
    "METHODS",
    "CSV_HEADER",
    "SimConfig",
    "ErrorRow",
    "run_cell",
    "run_grid",
    "emit_csv",
    "read_csv",
    "first_below",
    "below_from",
    "closed_form_error",
]
