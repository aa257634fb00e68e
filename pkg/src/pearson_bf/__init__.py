"""Two-sample Pearson Bayes factors from summary statistics.

Exact evaluation via log-gamma plus three closed-form approximations of the
gamma quotient Gamma(nu/2) / Gamma(nu/2 + 1/2), a BIC comparison, and a
seeded Monte Carlo error study.
"""

__version__ = "0.1.0"

from ._backend import BACKEND
from .bayes import (
    Alpha,
    BayesFactor,
    Direction,
    SummaryStats,
    bf_percent_error,
    bic_bf01,
    flip,
    log_tail_factor,
    pbf10,
    pbf10_general,
    percent_error,
    quotient_percent_error,
    tail_factor,
)
from .errors import DegenerateSampleError, DomainError
from .gamma import (
    QuotientMethod,
    analytic_c,
    frame_c,
    frame_quotient,
    ln_gamma,
    log_quotient,
    quotient,
    stirling_c,
    stirling_gamma,
    wendel_c,
)
