import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pearson_bf.bayes import (
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
from pearson_bf.errors import DomainError
from pearson_bf.gamma import QuotientMethod, analytic_c, quotient

APPROX = [QuotientMethod.WENDEL, QuotientMethod.STIRLING, QuotientMethod.FRAME]

# Four-gamma display at t=2, nu=71, alpha=0, evaluated with mpmath at 50 digits
# before the build: Gamma(35.5) Gamma(1.5) / (Gamma(36) Gamma(1)) (1 + 4/71)^34.5
PBF_ALPHA0_T2_NU71 = 0.98891844145561758531

BOROTA = SummaryStats(t=2.0, nu=71, n_total=73)


def naive_pbf10(t, nu, c):
    return c * math.sqrt((1 + t * t / nu) ** (nu - 1) / math.pi)


# -- SummaryStats / Alpha -----------------------------------------------------

@pytest.mark.parametrize("kwargs", [
    dict(t=float("nan"), nu=5),
    dict(t=1.0, nu=0),
    dict(t=1.0, nu=-2),
    dict(t=1.0, nu=float("inf")),
    dict(t=1.0, nu=5, n_total=2),
    dict(t=1.0, nu=5, n_total=4.5),
])
def test_summary_stats_rejects(kwargs):
    with pytest.raises(DomainError):
        SummaryStats(**kwargs)


def test_alpha_range():
    assert Alpha().value == -0.5
    with pytest.raises(DomainError):
        Alpha(-1.0)
    with pytest.raises(DomainError):
        Alpha(float("nan"))


# -- tail factor --------------------------------------------------------------

def test_tail_factor_examples():
    assert tail_factor(BOROTA) == pytest.approx(3.8417, abs=5e-5)
    for nu in (1, 4, 71, 500):
        assert tail_factor(SummaryStats(0.0, nu)) == pytest.approx(1 / math.sqrt(math.pi), rel=1e-15)
    assert tail_factor(SummaryStats(5.0, 1)) == pytest.approx(1 / math.sqrt(math.pi), rel=1e-15)


def test_tail_factor_does_not_overflow():
    # (1 + t^2/nu)^(nu-1) is ~1e662 here
    stats = SummaryStats(t=60.0, nu=1000)
    assert math.isfinite(log_tail_factor(stats))
    assert log_tail_factor(stats) > 700


# -- pbf10 --------------------------------------------------------------------

def test_pbf10_worked_example():
    assert pbf10(BOROTA, QuotientMethod.ANALYTIC).value == pytest.approx(0.6469, abs=5e-4)
    assert pbf10(BOROTA, QuotientMethod.WENDEL).value == pytest.approx(0.6446, abs=5e-4)
    assert pbf10(BOROTA, QuotientMethod.STIRLING).value == pytest.approx(0.6469, abs=5e-4)
    assert pbf10(BOROTA, QuotientMethod.FRAME).value == pytest.approx(0.6469, abs=5e-4)
    assert pbf10(BOROTA).direction is Direction.H1_OVER_H0


@pytest.mark.parametrize("method", list(QuotientMethod))
@pytest.mark.parametrize("t", [0.0, 0.5, 2.0, 7.5, 10.0])
@pytest.mark.parametrize("nu", [1, 2, 9, 71, 100])
def test_pbf10_log_space_matches_naive(method, t, nu):
    stats = SummaryStats(t, nu)
    naive = naive_pbf10(t, nu, quotient(nu, method))
    assert pbf10(stats, method).value == pytest.approx(naive, rel=1e-10)


def test_pbf10_nu_one_is_degenerate():
    # exponent nu - 1 = 0: the evidence ignores t entirely
    expected = analytic_c(1) / math.sqrt(math.pi)
    for t in (0.0, 3.0, 50.0):
        assert pbf10(SummaryStats(t, 1)).value == pytest.approx(expected, rel=1e-14)


@given(st.floats(min_value=0, max_value=50), st.floats(min_value=0, max_value=50),
       st.floats(min_value=1.5, max_value=1e4))
def test_pbf10_even_and_increasing_in_abs_t(t1, t2, nu):
    lo, hi = sorted((t1, t2))
    a = pbf10(SummaryStats(lo, nu)).log_value
    b = pbf10(SummaryStats(hi, nu)).log_value
    assert a <= b
    assert pbf10(SummaryStats(-hi, nu)).log_value == b


def test_pbf10_strictly_increasing_grid():
    values = [pbf10(SummaryStats(t, 20)).log_value for t in (0, 0.5, 1, 2, 4, 8)]
    assert all(b > a for a, b in zip(values, values[1:]))


@given(st.floats(min_value=-1e3, max_value=1e3), st.floats(min_value=1e-3, max_value=1e7))
def test_pbf10_finite(t, nu):
    for m in QuotientMethod:
        assert math.isfinite(pbf10(SummaryStats(t, nu), m).log_value)


@pytest.mark.parametrize("method", APPROX)
@pytest.mark.parametrize("t", [0.0, 1.3, 2.0, 6.0, -4.0])
@pytest.mark.parametrize("nu", [1.5, 2, 10, 71, 98, 500])
def test_t_cancellation(method, t, nu):
    stats = SummaryStats(t, nu)
    err = bf_percent_error(pbf10(stats, method), pbf10(stats, QuotientMethod.ANALYTIC))
    assert err == quotient_percent_error(nu, method)


def test_t_cancellation_against_plain_ratio():
    # where the error is large enough, the plain formula agrees too
    for nu in (2, 10, 40):
        for m in APPROX:
            plain = 100 * abs(quotient(nu, m) / analytic_c(nu) - 1)
            assert quotient_percent_error(nu, m) == pytest.approx(plain, rel=1e-9)


# -- general alpha --------------------------------------------------------------

def test_pbf10_general_examples():
    assert pbf10_general(BOROTA, Alpha(-0.5)).value == pytest.approx(0.6469, abs=5e-4)
    assert pbf10_general(SummaryStats(0.0, 10), -0.5).value == pytest.approx(
        analytic_c(10) / math.sqrt(math.pi), rel=1e-13)
    assert pbf10_general(BOROTA, Alpha(0.0)).value == pytest.approx(PBF_ALPHA0_T2_NU71, rel=1e-12)


@pytest.mark.parametrize("t", [0, 1, 2, 5])
@pytest.mark.parametrize("nu", [2, 10, 71, 200])
def test_general_alpha_reduces_to_default(t, nu):
    stats = SummaryStats(t, nu)
    assert pbf10_general(stats, Alpha(-0.5)).value == pytest.approx(pbf10(stats).value, rel=1e-12)


def test_pbf10_general_rejects_alpha():
    with pytest.raises(DomainError):
        pbf10_general(BOROTA, -1.0)
    with pytest.raises(DomainError):
        pbf10_general(BOROTA, -3)


# -- BIC ----------------------------------------------------------------------

def test_bic_worked_example():
    bf01 = bic_bf01(BOROTA)
    assert bf01.direction is Direction.H0_OVER_H1
    assert bf01.value == pytest.approx(1.1557, abs=5e-4)
    assert flip(bf01).value == pytest.approx(0.8653, abs=5e-4)


def test_bic_zero_t():
    assert bic_bf01(SummaryStats(0.0, 2, n_total=4)).value == pytest.approx(2.0, rel=1e-15)


def test_bic_needs_n():
    with pytest.raises(TypeError):
        bic_bf01(SummaryStats(2.0, 71))


# -- flip / percent error ------------------------------------------------------

def test_flip_worked_example():
    bf = BayesFactor(math.log(0.6446))
    flipped = flip(bf)
    assert flipped.direction is Direction.H0_OVER_H1
    assert flipped.value == pytest.approx(1.551, abs=5e-4)


def test_flip_unity_and_involution():
    one = BayesFactor(0.0)
    assert flip(one).value == 1.0
    assert flip(one).direction is Direction.H0_OVER_H1
    bf = pbf10(BOROTA, QuotientMethod.STIRLING)
    assert flip(flip(bf)) == bf
    assert flip(flip(bf)).log_terms == bf.log_terms


@given(st.floats(min_value=-700, max_value=700))
def test_flip_negates_log(x):
    bf = BayesFactor(x)
    assert flip(bf).log_value == -x


def test_percent_error_examples():
    assert percent_error(0.6446, 0.6469) == pytest.approx(0.36, abs=0.005)
    # inputs are the paper's 4-decimal roundings, which move the result to 33.76
    assert percent_error(0.8653, 0.6469) == pytest.approx(33.7, abs=0.1)
    assert percent_error(0.42, 0.42) == 0.0
    with pytest.raises(DomainError):
        percent_error(1.0, 0.0)
    with pytest.raises(DomainError):
        percent_error(1.0, -2.0)


def test_bf_percent_error_needs_common_direction():
    with pytest.raises(ValueError):
        bf_percent_error(bic_bf01(BOROTA), pbf10(BOROTA))


def test_bf_percent_error_matches_plain_formula():
    ref = pbf10(BOROTA)
    bic10 = flip(bic_bf01(BOROTA))
    assert bf_percent_error(bic10, ref) == pytest.approx(percent_error(bic10.value, ref.value), rel=1e-12)
    assert bf_percent_error(bic10, ref) == pytest.approx(33.7, abs=0.05)
    wendel = pbf10(BOROTA, QuotientMethod.WENDEL)
    assert bf_percent_error(wendel, ref) == pytest.approx(0.36, abs=0.01)
