"""Bandits with approximate posteriors: EBUCB, BUCB and Thompson sampling,
alpha-divergence numerics, quantile-shift bounds and adversarial posteriors."""
from .agents import Bucb, Ebucb, QuantileSchedule, ThompsonSampling, gamma_of_t, theoretical_log_coefficient
from .approx import (
    DivergenceBudget,
    Exact,
    Mixture,
    TsAdversary,
    UcbAdversary,
    approx_posterior,
    max_adversary_r,
    verify_budget,
)
from .bandit import BernoulliEnv, PosteriorState, RegretTrace, exact_posterior, pull, update
from .dist import Beta, BetaMixture, PiecewiseReweighted
from .divergence import alpha_divergence, alpha_divergence_quantile_form, bernoulli_kl, kl_divergence

__version__ = "0.1.0"
