import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ebucb.agents import (
    _argmax_random_ties,
    _quantiles,
    Bucb,
    Ebucb,
    QuantileSchedule,
    ThompsonSampling,
    gamma_of_t,
    select_bucb,
    select_ebucb,
    select_thompson,
    theoretical_log_coefficient,
)
from ebucb.approx import TsAdversary, approx_posterior
from ebucb.bandit import PosteriorState
from ebucb.dist import Beta, BetaMixture
from ebucb.divergence import bernoulli_kl


def test_schedule_values():
    assert gamma_of_t(QuantileSchedule(2, 0, 100), 10) == pytest.approx(0.99)
    assert gamma_of_t(QuantileSchedule(1, 0, 100), 1) == 0.0
    s = QuantileSchedule(0.5, 5, 10**4)
    assert gamma_of_t(s, 100) == pytest.approx(1 - 1 / (10 * math.log(1e4) ** 5), abs=1e-15)
    assert QuantileSchedule.from_alpha2(-1.0, 0.0, 10).zeta == pytest.approx(2.0)
    with pytest.raises(ValueError):
        s.gamma(0)
    with pytest.raises(ValueError):
        QuantileSchedule(0.0, 0.0, 10)


@given(st.floats(0.1, 3.0), st.floats(0.0, 6.0), st.integers(2, 10**6), st.integers(1, 10**6))
def test_schedule_monotone_and_clamped(zeta, c, horizon, t):
    s = QuantileSchedule(zeta, c, horizon)
    g1, g2 = s.gamma(t), s.gamma(t + 1)
    assert 0.0 <= g1 <= g2 < 1.0


def test_thompson_examples():
    rng = np.random.default_rng(0)
    sharp = [Beta(9e5, 1e5), Beta(1e5, 9e5)]
    assert all(select_thompson(sharp, rng) == 0 for _ in range(200))
    same = [Beta(2, 2)] * 4
    counts = np.bincount([select_thompson(same, rng) for _ in range(10_000)], minlength=4)
    assert np.all(np.abs(counts / 10_000 - 0.25) < 0.02)
    state = PosteriorState.fresh(2)
    posts = [approx_posterior(TsAdversary(2.0), state, 0, j) for j in (0, 1)]
    picks = [select_thompson(posts, rng) for _ in range(10_000)]
    assert np.mean(np.array(picks) == 1) >= 0.25


def test_ebucb_examples():
    rng = np.random.default_rng(1)
    sched = QuantileSchedule(1.0, 0.0, 100)
    picks = [select_ebucb([Beta(3, 1), Beta(1, 3)], 1, sched, rng) for _ in range(2000)]
    assert np.mean(picks) == pytest.approx(0.5, abs=0.05)
    # gamma_t = 0.9 at t = 10 under zeta = 1.
    assert select_ebucb([Beta(8, 4), Beta(2, 10)], 10, sched, rng) == 0


def test_bucb_matches_ebucb_with_zeta_one():
    posts = [Beta(4, 3), Beta(4, 3), Beta(2, 6)]
    for t in (1, 2, 50):
        r1, r2 = np.random.default_rng(5), np.random.default_rng(5)
        a = [select_bucb(posts, t, 1.0, 1000, r1) for _ in range(50)]
        b = [select_ebucb(posts, t, QuantileSchedule(1.0, 1.0, 1000), r2) for _ in range(50)]
        assert a == b
    assert QuantileSchedule(1.0, 0.0, 1000).gamma(100) == pytest.approx(0.99)


def test_agent_objects():
    rng = np.random.default_rng(2)
    posts = [Beta(5, 1), Beta(1, 5)]
    assert ThompsonSampling().select(posts, 3, rng) in (0, 1)
    assert Bucb(0.0, 100).select(posts, 50, rng) == 0
    assert Ebucb(QuantileSchedule(2.0, 0.0, 100)).select(posts, 50, rng) == 0
    assert Bucb(0.0, 100).schedule == QuantileSchedule(1.0, 0.0, 100)


@given(st.lists(st.tuples(st.floats(1, 50), st.floats(1, 50)), min_size=2, max_size=5), st.floats(0.01, 100.0),
       st.integers(1, 500), st.integers(0, 2**32))
def test_argmax_invariant_to_positive_scaling(params, scale, t, seed):
    posts = [Beta(a, b) for a, b in params]
    q = _quantiles(posts, QuantileSchedule(2.0, 0.0, 1000).gamma(t))
    # Same rng state: the tie set, and so the pick, must not change.
    a = _argmax_random_ties(q, np.random.default_rng(seed))
    b = _argmax_random_ties(q * scale, np.random.default_rng(seed))
    assert a == b


def test_mixture_quantiles_match_elementwise():
    posts = [BetaMixture((0.1, 0.9), (Beta(3, 5), Beta(1.5, 2.5))), Beta(2, 2)]
    q = _quantiles(posts, 0.95)
    assert q[0] == pytest.approx(float(posts[0].quantile(0.95)))
    assert q[1] == pytest.approx(float(posts[1].quantile(0.95)))


def test_theoretical_log_coefficient():
    c = theoretical_log_coefficient([0.7, 0.3], 2.0, -1.0, 0.1)
    assert c == pytest.approx(0.4 * 1.1 * 4 / 0.338919, rel=1e-6)
    assert c == pytest.approx(5.193, abs=1e-3)
    d = bernoulli_kl(0.3, 0.7)
    assert theoretical_log_coefficient([0.7, 0.3], 1e9, -1e9, 1e-9) == pytest.approx(0.4 / d, rel=1e-6)
    with pytest.raises(ValueError):
        theoretical_log_coefficient([0.7, 0.3], 0.5, -1.0, 0.1)


def test_levels_beyond_double_precision_still_rank_arms():
    # 1 - gamma_t is ~6e-17 here, so 1 - tail rounds to 1.
    sched = QuantileSchedule(3.0, 6.0, 106)
    assert sched.tail(12053) < 1e-16 and sched.gamma(12053) < 1.0
    rng = np.random.default_rng(0)
    posts = [Beta(8, 4), Beta(2, 10)]
    assert all(select_ebucb(posts, 12053, sched, rng) == 0 for _ in range(20))
    mixed = [BetaMixture((0.5, 0.5), (Beta(8, 4), Beta(4, 2))), Beta(2, 10)]
    assert select_ebucb(mixed, 12053, sched, rng) == 0
