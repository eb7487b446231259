"""Approximate posteriors built from the exact posterior state.

Besides the exact posterior there are two families:

* ``Mixture``: a misspecified posterior mixing the exact Beta with a Beta whose
  shape parameters are scaled by ``gamma_scale``;
* the two-arm adversaries, which rescale one arm's exact density on either
  side of a breakpoint so that one alpha-divergence stays small while the
  decision rule is misled.

Arm index 0 is taken to be the optimal arm in the adversarial constructions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .agents import QuantileSchedule, upper_quantile
from .bandit import BernoulliEnv, PosteriorState, exact_posterior
from .dist import Beta, BetaMixture, UnivariateDistribution, make_piecewise_left_boost, make_piecewise_right_boost
from .divergence import DEFAULT_TOL, alpha_divergence


@dataclass(frozen=True)
class Exact:
    name = "exact"


@dataclass(frozen=True)
class Mixture:
    w: float
    gamma_scale: float
    name = "mixture"

    def __post_init__(self):
        if not 0.0 <= self.w <= 1.0:
            raise ValueError(f"mixture weight must lie in [0, 1], got {self.w}")
        if not self.gamma_scale > 0.0:
            raise ValueError(f"gamma_scale must be positive, got {self.gamma_scale}")


@dataclass(frozen=True)
class TsAdversary:
    r: float
    name = "ts_adversary"

    def __post_init__(self):
        if not self.r > 1.0:
            raise ValueError(f"r must exceed 1, got {self.r}")


@dataclass(frozen=True)
class UcbAdversary:
    r: float
    name = "ucb_adversary"

    def __post_init__(self):
        if not self.r > 1.0:
            raise ValueError(f"r must exceed 1, got {self.r}")


ApproxScheme = Exact | Mixture | TsAdversary | UcbAdversary


@dataclass(frozen=True)
class DivergenceBudget:
    epsilon: float
    alpha1: float
    alpha2: float

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if not self.alpha1 > 1:
            raise ValueError("alpha1 must exceed 1")
        if not self.alpha2 < 0:
            raise ValueError("alpha2 must be negative")


def _require_two_arms(state: PosteriorState) -> None:
    if state.k != 2:
        raise ValueError(f"the adversarial constructions are defined for two arms, got {state.k}")


def approx_posterior(
    scheme, state: PosteriorState, t: int | None = None, arm: int = 0, schedule: QuantileSchedule | None = None
) -> UnivariateDistribution:
    """Approximate posterior Q_{t, arm} after ``t`` observations (default: ``state.t``).

    The UCB adversary needs the schedule: its breakpoint is the exact
    posterior quantile of arm 0 at level gamma_{t+1}, the level used at the
    next decision.
    """
    exact = exact_posterior(state, arm)
    if isinstance(scheme, Exact):
        return exact
    if isinstance(scheme, Mixture):
        s, n = state.S[arm], state.N[arm]
        scaled = Beta(scheme.gamma_scale * (1.0 + s), scheme.gamma_scale * (1.0 + n - s))
        if scheme.w == 0.0:
            return exact
        if scheme.w == 1.0:
            return scaled
        return BetaMixture((1.0 - scheme.w, scheme.w), (exact, scaled))
    if isinstance(scheme, TsAdversary):
        _require_two_arms(state)
        if arm == 1:
            return exact
        b = float(exact_posterior(state, 1).quantile(0.5))
        return make_piecewise_left_boost(exact, b, scheme.r)
    if isinstance(scheme, UcbAdversary):
        _require_two_arms(state)
        if arm == 0:
            return exact
        if schedule is None:
            raise ValueError("the UCB adversary needs the agent's quantile schedule")
        t = state.t if t is None else t
        b = upper_quantile(exact_posterior(state, 0), schedule.tail(t + 1))
        if b <= 0.0:
            # gamma = 0: the breakpoint sits at the left end, where the
            # construction reduces to the exact posterior.
            return exact
        b = min(b, math.nextafter(1.0, 0.0))
        return make_piecewise_right_boost(exact, b, scheme.r)
    raise TypeError(f"unknown approximation scheme {scheme!r}")


def max_adversary_r(epsilon: float, alpha: float) -> float:
    """Largest r for which the adversaries keep ``D_alpha(Q, Pi) <= epsilon`` (alpha < 1).

    Returns ``math.inf`` when any r is admissible.
    """
    if alpha >= 1.0:
        raise ValueError("the single-divergence adversary bound needs alpha < 1")
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    if alpha == 0.0:
        return math.exp(epsilon)
    base = epsilon * alpha * (alpha - 1.0) + 1.0
    if base <= 0.0:
        return math.inf
    return base ** (-1.0 / alpha)


def adversary_divergence_bound(r: float, alpha: float) -> float:
    """``(r^-alpha - 1) / (alpha (alpha - 1))``, or ``log r`` at alpha = 0."""
    if alpha == 0.0:
        return math.log(r)
    return (r ** (-alpha) - 1.0) / (alpha * (alpha - 1.0))


@dataclass(frozen=True)
class BudgetReport:
    d_alpha1: float
    d_alpha2: float
    within: bool


@dataclass(frozen=True)
class SingleBudgetReport:
    alpha: float
    d_alpha: float
    within: bool


def verify_single_budget(
    scheme, state: PosteriorState, t: int | None, arm: int, epsilon: float, alpha: float,
    tol: float = 1e-6, schedule: QuantileSchedule | None = None,
) -> SingleBudgetReport:
    q = approx_posterior(scheme, state, t, arm, schedule)
    p = exact_posterior(state, arm)
    d = 0.0 if q == p else alpha_divergence(q, p, alpha, DEFAULT_TOL).value
    return SingleBudgetReport(alpha, d, bool(d <= epsilon + tol))


def verify_budget(
    scheme, state: PosteriorState, t: int | None, arm: int, budget: DivergenceBudget,
    tol: float = 1e-6, schedule: QuantileSchedule | None = None,
) -> BudgetReport:
    """Check ``D_a(Q, Pi) <= eps`` for both a = alpha1 and a = alpha2."""
    r1 = verify_single_budget(scheme, state, t, arm, budget.epsilon, budget.alpha1, tol, schedule)
    r2 = verify_single_budget(scheme, state, t, arm, budget.epsilon, budget.alpha2, tol, schedule)
    return BudgetReport(r1.d_alpha, r2.d_alpha, r1.within and r2.within)


def adversary_slope_floor(env: BernoulliEnv, r: float) -> float:
    """Per-step regret floor ``(1/2)(1 - 1/r)(mu_1 - mu_2)`` under the TS adversary."""
    if env.k != 2:
        raise ValueError("the adversary slope floor is a two-arm statement")
    if not r > 1.0:
        raise ValueError("r must exceed 1")
    return 0.5 * (1.0 - 1.0 / r) * abs(env.mu[0] - env.mu[1])


def ucb_adversary_switch_time(schedule: QuantileSchedule, r: float) -> int | None:
    """First t in 1..T with gamma_t > 1/r, or None when the horizon ends first.

    The comparison treats values within a few ulps of 1/r as equal, so a
    schedule built with ``r = 1/gamma_{T0}`` switches at ``T0 + 1``.
    """
    if not r > 1.0:
        raise ValueError("r must exceed 1")
    threshold = 1.0 / r
    slack = 4.0 * math.ulp(threshold)
    for t in range(1, schedule.horizon + 1):
        if schedule.gamma(t) > threshold + slack:
            return t
    return None


def r_for_switch_time(schedule: QuantileSchedule, t0: int) -> float:
    """The r with ``gamma_{t0} = 1/r``."""
    g = schedule.gamma(t0)
    if not g > 0.0:
        raise ValueError(f"gamma_{t0} = 0 admits no r > 1")
    return 1.0 / g
