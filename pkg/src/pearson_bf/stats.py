"""Seeded random streams and the pooled-variance two-sample t-test.

The generator is SplitMix64 (Steele, Lea & Flood, 2014): a 64-bit Weyl
sequence with increment 0x9E3779B97F4A7C15 passed through a 64-bit mixing
finalizer. Period is exactly 2**64 and the output is a pure function of the
seed, so streams reproduce bit-for-bit on every platform.

Independent substreams for simulation cells are keyed on
``(seed, n_total, iteration)`` with :func:`substream`; the derivation uses only
the same finalizer, so any worker can rebuild any cell's stream.

Normal variates use Marsaglia's polar method. Both variates of each accepted
pair are used; a leftover variate at the end of :func:`draw_normal` is
discarded, so streams carry no cached state between calls.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Sequence

from .errors import DegenerateSampleError, DomainError

__all__ = [
    "RngStream",
    "TestResult",
    "make_rng",
    "substream",
    "draw_uniform",
    "draw_normal",
    "two_sample_t",
]

Sample = List[float]

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_TWO_POW_MINUS_53 = 2.0 ** -53


def mix64(z: int) -> int:
    """SplitMix64 output finalizer (a bijection on 64-bit integers)."""
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return z ^ (z >> 31)


def _fold_in(key: int, data: int) -> int:
    return mix64(key ^ mix64((data + GOLDEN_GAMMA) & MASK64))


@dataclass
class RngStream:
    """SplitMix64 state. Single owner: never share one stream across workers."""

    state: int

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        return mix64(self.state)


def _check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed <= MASK64:
        raise DomainError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def make_rng(seed: int) -> RngStream:
    return RngStream(_check_seed(seed))


def substream_state(seed: int, n_total: int, iteration: int) -> int:
    key = mix64((_check_seed(seed) + GOLDEN_GAMMA) & MASK64)
    key = _fold_in(key, int(n_total) & MASK64)
    return _fold_in(key, int(iteration) & MASK64)


def substream(seed: int, n_total: int, iteration: int) -> RngStream:
    """Stream for simulation cell ``(n_total, iteration)`` under master ``seed``."""
    return RngStream(substream_state(seed, n_total, iteration))


def draw_uniform(rng: RngStream) -> float:
    """Uniform double on [0, 1): the top 53 bits of the next output."""
    return (rng.next_u64() >> 11) * _TWO_POW_MINUS_53


def _polar_pair(rng: RngStream) -> tuple:
    while True:
        u = 2.0 * draw_uniform(rng) - 1.0
        v = 2.0 * draw_uniform(rng) - 1.0
        s = u * u + v * v
        if 0.0 < s < 1.0:
            f = math.sqrt(-2.0 * math.log(s) / s)
            return u * f, v * f


def draw_normal(rng: RngStream, mean: float, sd: float, n: int) -> Sample:
    """``n`` independent N(mean, sd^2) variates."""
    if not sd > 0.0:
        raise DomainError(f"sd must be > 0, got {sd!r}")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n!r}")
    out = []
    while len(out) < n:
        z1, z2 = _polar_pair(rng)
        out.append(mean + sd * z1)
        if len(out) < n:
            out.append(mean + sd * z2)
    return out


@dataclass(frozen=True)
class TestResult:
    t: float
    nu: float

    __test__ = False  # not a pytest class


def _mean_and_ss(xs: Sequence[float]) -> tuple:
    # plain left-to-right sums; the compiled kernel repeats this exact order
    total = 0.0
    for x in xs:
        total += x
    mean = total / len(xs)
    ss = 0.0
    for x in xs:
        d = x - mean
        ss += d * d
    return mean, ss


def two_sample_t(a: Sequence[float], b: Sequence[float]) -> TestResult:
    """Student's t-test with pooled variance; nu = len(a) + len(b) - 2.

    Raises DegenerateSampleError when both samples have zero variance.
    """
    n1, n2 = len(a), len(b)
    if n1 < 2 or n2 < 2:
        raise DomainError(f"each sample needs at least 2 values, got {n1} and {n2}")
    mean_a, ss_a = _mean_and_ss(a)
    mean_b, ss_b = _mean_and_ss(b)
    if ss_a == 0.0 and ss_b == 0.0:
        raise DegenerateSampleError("both samples have zero variance")
    df = n1 + n2 - 2
    pooled = (ss_a + ss_b) / df
    se = math.sqrt(pooled * (1.0 / n1 + 1.0 / n2))
    return TestResult((mean_a - mean_b) / se, float(df))
