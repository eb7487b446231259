"""Quantile shifts under an alpha-divergence budget.

If ``D_alpha(P1, P2) <= eps`` then the P1-quantile at level gamma is the
P2-quantile at some level ``gamma + delta``.  For ``alpha > 1`` delta is
bounded above, for ``alpha < 0`` it is bounded below, and for
``alpha`` in (0, 1) no nontrivial control exists once eps is large.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .dist import PiecewiseReweighted, UnivariateDistribution


@dataclass(frozen=True)
class ShiftFactors:
    M_eps_alpha: float
    alpha_tilde: float


@dataclass(frozen=True)
class ShiftBoundParams:
    gamma: float
    epsilon: float
    alpha: float

    def __post_init__(self):
        if not 0.0 < self.gamma < 1.0:
            raise ValueError(f"gamma must lie in (0, 1), got {self.gamma}")
        if not self.epsilon > 0.0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie outside [0, 1], got {self.alpha}")


def shift_factor(epsilon: float, alpha: float) -> ShiftFactors:
    """``M = (eps a (a-1) + 1)^(1/(1-a))`` and ``a~ = a/(a-1)``."""
    if 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie outside [0, 1], got {alpha}")
    if epsilon < 0.0:
        raise ValueError("epsilon must be nonnegative")
    base = epsilon * alpha * (alpha - 1.0) + 1.0
    return ShiftFactors(base ** (1.0 / (1.0 - alpha)), alpha / (alpha - 1.0))


def _bound(p: ShiftBoundParams) -> float:
    f = shift_factor(p.epsilon, p.alpha)
    return 1.0 - p.gamma - f.M_eps_alpha * (1.0 - p.gamma) ** f.alpha_tilde


def shift_upper_bound(p: ShiftBoundParams) -> float:
    """Largest possible delta when alpha > 1."""
    if not p.alpha > 1.0:
        raise ValueError("the upper bound needs alpha > 1")
    return _bound(p)


def shift_lower_bound(p: ShiftBoundParams) -> float:
    """Smallest possible delta when alpha < 0 (may be below -gamma, i.e. vacuous)."""
    if not p.alpha < 0.0:
        raise ValueError("the lower bound needs alpha < 0")
    return _bound(p)


def measure_shift(p1: UnivariateDistribution, p2: UnivariateDistribution, gamma: float) -> float:
    """delta such that ``R1(gamma) = R2(gamma + delta)``, as ``F2(R1(gamma)) - gamma``."""
    return float(p2.cdf(p1.quantile(gamma))) - gamma


def extremal_pair(p1: UnivariateDistribution, gamma: float, delta: float) -> UnivariateDistribution:
    """P2 with density scaled by (gamma+delta)/gamma below R1(gamma) and
    (1-gamma-delta)/(1-gamma) above, so that its quantile at gamma + delta is R1(gamma)."""
    if not 0.0 < gamma < 1.0:
        raise ValueError(f"gamma must lie in (0, 1), got {gamma}")
    if not -gamma < delta < 1.0 - gamma:
        raise ValueError(f"delta must lie strictly inside (-gamma, 1 - gamma), got {delta}")
    b = float(p1.quantile(gamma))
    return PiecewiseReweighted.from_left_mass(p1, b, gamma + delta)


def _pow_one_minus_alpha(x: float, alpha: float) -> float:
    # 0^(1-alpha) is 0 for alpha < 1 and +inf for alpha > 1.
    if x == 0.0:
        return 0.0 if alpha < 1.0 else math.inf
    return x ** (1.0 - alpha)


def g_of_delta(gamma: float, delta: float, alpha: float) -> float:
    """Divergence of the extremal pair for shift delta, in closed form."""
    if alpha in (0.0, 1.0):
        raise ValueError("alpha must differ from 0 and 1")
    if not -gamma <= delta <= 1.0 - gamma:
        raise ValueError(f"delta must lie in [-gamma, 1 - gamma], got {delta}")
    s = alpha * (alpha - 1.0)
    left = _pow_one_minus_alpha(max((gamma + delta) / gamma, 0.0), alpha)
    right = _pow_one_minus_alpha(max((1.0 - gamma - delta) / (1.0 - gamma), 0.0), alpha)
    return (gamma * left + (1.0 - gamma) * right - 1.0) / s
