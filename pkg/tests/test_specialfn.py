"""Negative-argument polylogarithm and small special-function helpers."""

import math

import pytest

from powerparts import (
    DomainError,
    PolylogRequest,
    gamma_fn,
    gen_binomial,
    normal_cdf,
    polylog_neg,
)


def test_li1_closed_form():
    # series side honours a 1e-15 budget; the quadrature side (rho > 0)
    # certifies ~1e-14 and refuses tighter requests, so test at its level
    for rho in (-2.0, -0.5, 0.0):
        got = polylog_neg(PolylogRequest(1.0, rho, 1e-15))
        want = -math.log(1.0 + math.exp(rho))
        assert math.isclose(got, want, rel_tol=1e-13)
    for rho in (0.7, 1.3):
        got = polylog_neg(PolylogRequest(1.0, rho))
        want = -math.log(1.0 + math.exp(rho))
        assert math.isclose(got, want, rel_tol=1e-12)


def test_accuracy_budget_is_honest():
    from powerparts import ConvergenceFailure

    with pytest.raises(ConvergenceFailure):
        polylog_neg(PolylogRequest(1.0, 0.7, 1e-15))


def test_li_at_minus_one_reference_values():
    # -eta(s) at s = 2, 3, 4
    refs = {
        2.0: -math.pi ** 2 / 12.0,
        3.0: -0.9015426773696957,  # -3*zeta(3)/4
        4.0: -7.0 * math.pi ** 4 / 720.0,
    }
    for s, want in refs.items():
        assert math.isclose(polylog_neg(PolylogRequest(s, 0.0)), want, rel_tol=1e-13)
    assert math.isclose(-7.0 * math.pi ** 4 / 720.0, -0.9470328294972459, rel_tol=1e-15)


def test_series_and_quadrature_routes_agree():
    worst = 0.0
    for s in (0.5, 1.0, 1.5, 2.0, 3.0, 4.0):
        for rho in (0.0, -0.5, -2.0):
            a = polylog_neg(PolylogRequest(s, rho), route="series")
            b = polylog_neg(PolylogRequest(s, rho), route="quadrature")
            worst = max(worst, abs(a - b) / abs(a))
    assert worst < 1e-10, f"route disagreement {worst:.3e}"


def test_large_rho_leading_deviation():
    # Li_s(-e^rho) -> -rho^s/Gamma(s+1) with first correction
    # pi^2 s(s-1)/6 * rho^(s-2)/Gamma(s+1); the measured deviation ratio
    # sits within 1% of that correction for rho >= 10.
    for s in (1.5, 3.0):
        lead_corr = math.pi ** 2 * s * (s - 1.0) / 6.0
        for rho in (10.0, 20.0, 40.0, 80.0):
            li = polylog_neg(PolylogRequest(s, rho))
            main = -(rho ** s) / gamma_fn(s + 1.0)
            dev = abs(li / main - 1.0)
            ratio = dev * rho * rho / lead_corr
            assert 0.9 < ratio < 1.1, f"s={s}, rho={rho}: ratio {ratio:.4f}"


def test_monotone_decreasing_in_rho():
    for s in (1.0, 2.5):
        vals = [polylog_neg(PolylogRequest(s, rho)) for rho in (-3.0, -1.0, 0.0, 2.0, 10.0)]
        assert all(a > b for a, b in zip(vals, vals[1:]))
        assert all(v < 0 for v in vals)


def test_request_validation():
    with pytest.raises(DomainError):
        PolylogRequest(0.0, 0.0)
    with pytest.raises(DomainError):
        PolylogRequest(-1.0, 0.0)
    with pytest.raises(DomainError):
        PolylogRequest(2.0, math.inf)
    with pytest.raises(DomainError):
        polylog_neg(PolylogRequest(2.0, 0.0), route="bogus")


def test_small_rho_deep_negative_tail():
    # e^rho tiny: Li_s(-e^rho) ~ -e^rho
    for s in (1.0, 3.0):
        got = polylog_neg(PolylogRequest(s, -30.0))
        assert math.isclose(got, -math.exp(-30.0), rel_tol=1e-12)


def test_gamma_and_binomial_helpers():
    assert math.isclose(gamma_fn(0.5), math.sqrt(math.pi), rel_tol=1e-15)
    assert gamma_fn(5.0) == 24.0
    with pytest.raises(DomainError):
        gamma_fn(0.0)
    with pytest.raises(DomainError):
        gamma_fn(-1.5)
    assert gen_binomial(2.0, 1) == 2.0
    assert math.isclose(gen_binomial(1.5, 2), 0.375, rel_tol=1e-15)
    assert gen_binomial(3.0, 0) == 1.0


def test_normal_cdf_basics():
    assert normal_cdf(0.0) == 0.5
    assert math.isclose(normal_cdf(1.0) + normal_cdf(-1.0), 1.0, rel_tol=1e-15)
    assert math.isclose(normal_cdf(1.959963984540054), 0.975, rel_tol=1e-12)
