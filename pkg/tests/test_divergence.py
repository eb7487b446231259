import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate, special

from ebucb.dist import Beta, BetaMixture, PiecewiseReweighted, make_piecewise_left_boost
from ebucb.divergence import (
    INFINITY_THRESHOLD,
    SupportError,
    alpha_divergence,
    alpha_divergence_quantile_form,
    bernoulli_kl,
    bernoulli_kl_plus,
    check_support,
    kl_divergence,
)

shape = st.floats(1.0, 30.0)
alphas = st.sampled_from([-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 3.0])


def beta_pair_oracle(p, q, alpha):
    """Closed form for two Betas when the mixed shape parameters stay positive."""
    if alpha == 1.0:
        return (special.betaln(q.a, q.b) - special.betaln(p.a, p.b)
                + (p.a - q.a) * special.digamma(p.a) + (p.b - q.b) * special.digamma(p.b)
                + (q.a - p.a + q.b - p.b) * special.digamma(p.a + p.b))
    if alpha == 0.0:
        return beta_pair_oracle(q, p, 1.0)
    a = alpha * p.a + (1 - alpha) * q.a
    b = alpha * p.b + (1 - alpha) * q.b
    if a <= 0 or b <= 0:
        return math.inf
    log_i = special.betaln(a, b) - alpha * special.betaln(p.a, p.b) - (1 - alpha) * special.betaln(q.a, q.b)
    d = math.expm1(log_i) / (alpha * (alpha - 1))
    # Values past the 1e12 cap are reported as infinite by both routes.
    return math.inf if d > INFINITY_THRESHOLD else d


def test_closed_forms():
    u, b = Beta(1, 1), Beta(2, 1)
    assert alpha_divergence(u, b, 0.5).value == pytest.approx(-4 * (2 * math.sqrt(2) / 3 - 1), abs=1e-8)
    assert alpha_divergence(u, b, 0.5).value == pytest.approx(0.228764, abs=1e-6)
    assert kl_divergence(u, b).value == pytest.approx(1 - math.log(2), abs=1e-8)
    assert kl_divergence(b, u).value == pytest.approx(math.log(2) - 0.5, abs=1e-8)
    assert alpha_divergence_quantile_form(u, b, 0.5).value == pytest.approx(0.228764, abs=1e-6)


def test_divergent_case_is_flagged():
    res = alpha_divergence(Beta(1, 1), Beta(2, 1), 2.0)
    assert res.is_infinite
    assert alpha_divergence_quantile_form(Beta(1, 1), Beta(2, 1), 2.0).is_infinite


def test_identical_distributions_give_zero():
    p = Beta(3.5, 7.0)
    assert alpha_divergence(p, Beta(3.5, 7.0), 2.0).value == pytest.approx(0.0, abs=1e-12)
    assert kl_divergence(p, Beta(3.5, 7.0)).value == pytest.approx(0.0, abs=1e-12)
    assert alpha_divergence_quantile_form(p, Beta(3.5, 7.0), 0.5).value == pytest.approx(0.0, abs=1e-12)


def test_bernoulli_kl_values():
    assert bernoulli_kl(0.3, 0.3) == 0.0
    assert bernoulli_kl(0.3, 0.7) == pytest.approx(0.4 * math.log(7 / 3), abs=1e-12)
    assert bernoulli_kl(0.3, 0.7) == pytest.approx(0.338919, abs=1e-6)
    assert math.isinf(bernoulli_kl(0.5, 0.0))
    assert bernoulli_kl_plus(0.3, 0.7) == pytest.approx(0.338919, abs=1e-6)
    assert bernoulli_kl_plus(0.7, 0.3) == 0.0
    assert bernoulli_kl_plus(0.5, 0.5) == 0.0
    with pytest.raises(ValueError):
        bernoulli_kl(1.5, 0.5)


def test_support_check():
    check_support(Beta(2, 2))
    class Hole(Beta):
        def logpdf(self, x):
            x = np.asarray(x, dtype=float)
            return np.where(np.abs(x - 0.5) < 0.1, -np.inf, super().logpdf(x))
    with pytest.raises(SupportError):
        check_support(Hole(2, 2))


def test_invalid_arguments():
    with pytest.raises(ValueError):
        alpha_divergence(Beta(1, 1), Beta(2, 2), math.nan)
    with pytest.raises(ValueError):
        alpha_divergence(Beta(1, 1), Beta(2, 2), 0.5, tol=0.0)


@given(shape, shape, shape, shape, alphas)
def test_direct_route_matches_beta_closed_form(a1, b1, a2, b2, alpha):
    p, q = Beta(a1, b1), Beta(a2, b2)
    want = beta_pair_oracle(p, q, alpha)
    got = alpha_divergence(p, q, alpha).value
    if math.isinf(want):
        assert math.isinf(got)
    else:
        assert got == pytest.approx(want, rel=1e-7, abs=1e-8)


@given(shape, shape, shape, shape, alphas)
def test_quantile_route_matches_beta_closed_form(a1, b1, a2, b2, alpha):
    p, q = Beta(a1, b1), Beta(a2, b2)
    want = beta_pair_oracle(p, q, alpha)
    got = alpha_divergence_quantile_form(p, q, alpha).value
    if math.isinf(want):
        assert math.isinf(got)
    else:
        assert got == pytest.approx(want, rel=1e-7, abs=1e-8)


@given(shape, shape, shape, shape, alphas)
def test_positivity(a1, b1, a2, b2, alpha):
    d = alpha_divergence(Beta(a1, b1), Beta(a2, b2), alpha).value
    assert d >= -1e-8


@given(shape, shape, shape, shape, alphas)
def test_symmetry_across_routes(a1, b1, a2, b2, alpha):
    p, q = Beta(a1, b1), Beta(a2, b2)
    d1 = alpha_divergence(p, q, alpha).value
    d2 = alpha_divergence_quantile_form(q, p, 1 - alpha).value
    assert math.isinf(d1) == math.isinf(d2)
    if math.isfinite(d1):
        assert d2 == pytest.approx(d1, rel=2e-8, abs=2e-8)


@given(shape, shape, shape, shape)
def test_kl_is_the_limit_in_alpha(a1, b1, a2, b2):
    p, q = Beta(a1, b1), Beta(a2, b2)
    kl = kl_divergence(p, q).value
    lo, hi = (alpha_divergence(p, q, a).value for a in (1 - 1e-4, 1 + 1e-4))
    if math.isfinite(hi):
        # One-sided steps move by h dD/da, which exceeds 1e-3 * KL for lopsided pairs;
        # the midpoint is second order in h.
        assert hi == pytest.approx(kl, rel=1e-2, abs=1e-3)
        assert lo == pytest.approx(kl, rel=1e-2, abs=1e-3)
        assert 0.5 * (lo + hi) == pytest.approx(kl, rel=1e-4, abs=1e-6)


def test_mixture_and_piecewise_against_quad():
    base = Beta(6, 3)
    cases = [
        (BetaMixture((0.1, 0.9), (Beta(6, 3), Beta(12, 6))), base),
        (make_piecewise_left_boost(base, float(base.quantile(0.4)), 2.0), base),
        (PiecewiseReweighted.from_left_mass(base, float(base.quantile(0.7)), 0.8), base),
    ]
    for q, p in cases:
        for alpha in (-1.0, 0.5, 2.0):
            f = lambda x: float(np.exp(alpha * q.logpdf(x) + (1 - alpha) * p.logpdf(x)))
            pts = [float(p.quantile(v)) for v in (0.1, 0.5, 0.9)] + list(getattr(q, "breakpoints", ()))
            total, _ = integrate.quad(f, 0, 1, points=sorted(pts), limit=400, epsabs=1e-13, epsrel=1e-13)
            want = (total - 1) / (alpha * (alpha - 1))
            assert alpha_divergence(q, p, alpha).value == pytest.approx(want, abs=1e-8)
            assert alpha_divergence_quantile_form(q, p, alpha).value == pytest.approx(want, abs=1e-8)


def test_slowly_decaying_tail_is_finite():
    # p1^2/p2 ~ x^-0.875 near 0: integrable, though each decade holds ~75% of the previous one.
    p, q = Beta(1.3125, 1.0), Beta(2.5, 1.0)
    want = beta_pair_oracle(p, q, 2.0)
    assert want == pytest.approx(2.25625, abs=1e-12)
    assert alpha_divergence(p, q, 2.0).value == pytest.approx(want, rel=1e-8)
    assert alpha_divergence_quantile_form(p, q, 2.0).value == pytest.approx(want, rel=1e-8)


def test_slow_tail_with_curved_envelope():
    # Near x = 1 the integrand is (1-x)^-0.954 times (x)^27: the x factor bends
    # the outer window enough to bias a two-decade extrapolation by 1e-7.
    p, q = Beta(29.935864330688297, 29.0), Beta(29.0, 14.523050328672824)
    want = beta_pair_oracle(p, q, -1.0)
    for route in (alpha_divergence, alpha_divergence_quantile_form):
        res = route(p, q, -1.0)
        assert res.value == pytest.approx(want, rel=1e-8)
        assert abs(res.value - want) <= res.estimated_abs_error
