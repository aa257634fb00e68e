"""Pure-Python simulation kernel.

Reference implementation of the per-cell loop. ``_kernels.pyx`` repeats the
same arithmetic in the same order and must agree bit for bit; the test suite
checks this whenever the compiled module is importable.
"""

from __future__ import annotations

import math

from .bayes import (
    BayesFactor,
    SummaryStats,
    bf_percent_error,
    bic_bf01,
    flip,
    log_tail_factor,
)
from .errors import DegenerateSampleError
from .stats import (
    draw_normal,
    draw_uniform,
    make_rng,
    substream,
    substream_state,
    two_sample_t,
)

NAME = "python"

# column order of every error tuple returned from this module
METHOD_ORDER = ("wendel", "stirling", "frame", "bic")


def iteration_errors(t, nu, n_total, log_c):
    """Percent errors (wendel, stirling, frame, bic) against the exact PBF10.

    ``log_c`` is (ln C_exact, ln C_wendel, ln C_stirling, ln C_frame) at ``nu``.
    """
    stats = SummaryStats(t, nu, n_total)
    log_tail = log_tail_factor(stats)
    reference = BayesFactor.from_terms((log_c[0], log_tail))
    errors = [
        bf_percent_error(BayesFactor.from_terms((lc, log_tail)), reference)
        for lc in log_c[1:]
    ]
    errors.append(bf_percent_error(flip(bic_bf01(stats)), reference))
    return tuple(errors)


def draw_experiment(rng, n_total):
    """One two-sample dataset: (d, sample1, sample2) with sizes ceil(N/2), floor(N/2)."""
    d = draw_uniform(rng)
    a = draw_normal(rng, 0.0, 1.0, (n_total + 1) // 2)
    b = draw_normal(rng, d, 1.0, n_total // 2)
    return d, a, b


def run_cell(seed, n_total, iterations, log_c, out=None):
    """Run ``iterations`` experiments at total size ``n_total``.

    Returns (mean errors in METHOD_ORDER, number of degenerate redraws). When
    ``out`` is given it receives the per-iteration errors, row-major with
    four columns.
    """
    nu = float(n_total - 2)
    columns = ([], [], [], [])
    redraws = 0
    for i in range(iterations):
        rng = substream(seed, n_total, i)
        while True:
            _, a, b = draw_experiment(rng, n_total)
            try:
                result = two_sample_t(a, b)
            except DegenerateSampleError:
                redraws += 1
                continue
            break
        errors = iteration_errors(result.t, nu, n_total, log_c)
        for k, e in enumerate(errors):
            columns[k].append(e)
            if out is not None:
                out[4 * i + k] = e
    means = tuple(math.fsum(col) / iterations for col in columns)
    return means, redraws


def uniforms(state, count):
    rng = make_rng(state)
    return [draw_uniform(rng) for _ in range(count)]


def normals(state, mean, sd, n):
    return draw_normal(make_rng(state), mean, sd, n)


def fsum(values):
    return math.fsum(values)


__all__ = [
    "NAME",
    "METHOD_ORDER",
    "iteration_errors",
    "run_cell",
    "substream_state",
    "uniforms",
    "normals",
    "fsum",
]
