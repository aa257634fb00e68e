"""Pearson and BIC Bayes factors from two-sample t-test summary statistics.

The Pearson Bayes factor for H1 over H0 with prior scale alpha = -1/2 is

    PBF10 = C(nu) * sqrt((1 + t^2/nu)^(nu - 1) / pi),

with C(nu) = Gamma(nu/2) / Gamma(nu/2 + 1/2) from :mod:`pearson_bf.gamma`.
Everything is evaluated in log space; a :class:`BayesFactor` keeps the
additive log components it was built from so that comparisons between
factors sharing a component (the tail factor) cancel it exactly.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

from .errors import DomainError
from .gamma import QuotientMethod, ln_gamma, log_quotient

__all__ = [
    "Direction",
    "SummaryStats",
    "BayesFactor",
    "Alpha",
    "log_tail_factor",
    "tail_factor",
    "pbf10",
    "pbf10_general",
    "bic_bf01",
    "flip",
    "percent_error",
    "bf_percent_error",
    "quotient_percent_error",
]

_LOG_PI = math.log(math.pi)


class Direction(enum.Enum):
    H1_OVER_H0 = "10"
    H0_OVER_H1 = "01"

    def flipped(self) -> "Direction":
        if self is Direction.H1_OVER_H0:
            return Direction.H0_OVER_H1
        return Direction.H1_OVER_H0


@dataclass(frozen=True)
class SummaryStats:
    """Observed t, degrees of freedom, and (for BIC only) total sample size N."""

    t: float
    nu: float
    n_total: Optional[int] = None

    def __post_init__(self):
        t = float(self.t)
        nu = float(self.nu)
        if not math.isfinite(t):
            raise DomainError(f"t must be finite, got {t!r}")
        if not math.isfinite(nu) or nu <= 0.0:
            raise DomainError(f"nu must be finite and > 0, got {nu!r}")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "nu", nu)
        if self.n_total is not None:
            if int(self.n_total) != self.n_total or self.n_total < 3:
                raise DomainError(f"n_total must be an integer >= 3, got {self.n_total!r}")
            object.__setattr__(self, "n_total", int(self.n_total))


@dataclass(frozen=True)
class BayesFactor:
    """A Bayes factor held as its natural log.

    ``log_terms`` are the additive components summing to ``log_value``
    (e.g. ln C(nu) and ln tail). They do not take part in equality.
    """

    log_value: float
    direction: Direction = Direction.H1_OVER_H0
    log_terms: Tuple[float, ...] = field(default=(), compare=False, repr=False)

    @classmethod
    def from_terms(cls, terms, direction=Direction.H1_OVER_H0) -> "BayesFactor":
        terms = tuple(float(x) for x in terms)
        return cls(math.fsum(terms), direction, terms)

    @property
    def value(self) -> float:
        return math.exp(self.log_value)

    @property
    def terms(self) -> Tuple[float, ...]:
        return self.log_terms or (self.log_value,)

    def as_direction(self, direction: Direction) -> "BayesFactor":
        return self if direction is self.direction else flip(self)


@dataclass(frozen=True)
class Alpha:
    """Scale of the Pearson Type-VI prior; must exceed -1."""

    value: float = -0.5

    def __post_init__(self):
        v = float(self.value)
        if not math.isfinite(v) or v <= -1.0:
            raise DomainError(f"alpha must be finite and > -1, got {v!r}")
        object.__setattr__(self, "value", v)


def log_tail_factor(stats: SummaryStats) -> float:
    """ln sqrt((1 + t^2/nu)^(nu-1) / pi)."""
    return 0.5 * ((stats.nu - 1.0) * math.log1p(stats.t * stats.t / stats.nu) - _LOG_PI)


def tail_factor(stats: SummaryStats) -> float:
    return math.exp(log_tail_factor(stats))


def pbf10(stats: SummaryStats, method=QuotientMethod.ANALYTIC) -> BayesFactor:
    """Pearson Bayes factor (alpha = -1/2) with C(nu) from ``method``."""
    log_c = log_quotient(stats.nu, method)
    return BayesFactor.from_terms((log_c, log_tail_factor(stats)))


def pbf10_general(stats: SummaryStats, alpha: "Alpha | float" = Alpha()) -> BayesFactor:
    """Pearson Bayes factor for an arbitrary prior scale alpha > -1.

    Only the exact gamma evaluation is available here; the closed forms are
    specific to alpha = -1/2.
    """
    if not isinstance(alpha, Alpha):
        alpha = Alpha(alpha)
    a = alpha.value
    nu = stats.nu
    log_gammas = (ln_gamma(0.5 * nu) + ln_gamma(a + 1.5)
                  - ln_gamma(0.5 * (nu + 1.0)) - ln_gamma(a + 1.0))
    log_power = 0.5 * (nu - 2.0 * a - 2.0) * math.log1p(stats.t * stats.t / nu)
    return BayesFactor.from_terms((log_gammas, log_power))


def bic_bf01(stats: SummaryStats) -> BayesFactor:
    """BIC approximation sqrt(N (1 + t^2/nu)^(-N)), evidence for H0.

    N is the *total* sample size, so ``stats.n_total`` must be set.
    """
    if stats.n_total is None:
        raise TypeError("bic_bf01 needs stats.n_total (total sample size N)")
    n = float(stats.n_total)
    log_bf = 0.5 * (math.log(n) - n * math.log1p(stats.t * stats.t / stats.nu))
    return BayesFactor.from_terms((log_bf,), Direction.H0_OVER_H1)


def flip(bf: BayesFactor) -> BayesFactor:
    """Reciprocal Bayes factor (BF10 <-> BF01)."""
    return BayesFactor(-bf.log_value, bf.direction.flipped(),
                       tuple(-x for x in bf.log_terms))


def percent_error(approx: float, reference: float) -> float:
    """100 |approx - reference| / reference."""
    if not reference > 0.0 or not math.isfinite(reference):
        raise DomainError(f"reference must be finite and > 0, got {reference!r}")
    return 100.0 * abs(approx - reference) / reference


def bf_percent_error(approx: BayesFactor, reference: BayesFactor) -> float:
    """Percent error of one Bayes factor against another, on a common direction.

    Same quantity as :func:`percent_error` on the two values, but computed as
    100 |expm1(ln approx - ln reference)| with the log difference summed
    exactly over both factors' components. Shared components cancel without
    rounding, so errors far below machine epsilon relative to the factors
    themselves are still resolved.
    """
    if approx.direction is not reference.direction:
        raise ValueError("Bayes factors must share a direction; flip one first")
    diff = math.fsum(approx.terms + tuple(-x for x in reference.terms))
    return 100.0 * abs(math.expm1(diff))


def quotient_percent_error(nu: float, method) -> float:
    """Percent error of the ``method`` quotient against the exact one.

    Equals 100 |C_method(nu) / C_exact(nu) - 1|; any PBF10 built on the
    method has exactly this error, whatever t is.
    """
    diff = log_quotient(nu, method) - log_quotient(nu, QuotientMethod.ANALYTIC)
    return 100.0 * abs(math.expm1(diff))
