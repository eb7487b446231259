"""Decision rules: Thompson sampling, BUCB and EBUCB.

All three act on a list of per-arm (possibly approximate) posteriors and are
stateless apart from the random generator they are handed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import special

from .dist import Beta, UnivariateDistribution
from .divergence import bernoulli_kl

_BELOW_ONE = math.nextafter(1.0, 0.0)
# Tail probabilities below this are inverted through the log survival function.
_DIRECT_TAIL = 1e-12


@dataclass(frozen=True)
class QuantileSchedule:
    """``gamma_t = max(0, 1 - 1 / (t^zeta (ln T)^c))``."""

    zeta: float = 2.0
    c: float = 0.0
    horizon: int = 1000

    def __post_init__(self):
        if not self.zeta > 0:
            raise ValueError(f"zeta must be positive, got {self.zeta}")
        if not self.c >= 0:
            raise ValueError(f"c must be nonnegative, got {self.c}")
        if self.horizon < 1:
            raise ValueError("horizon must be at least 1")
        if self.c > 0 and self.horizon < 2:
            raise ValueError("c > 0 needs a horizon of at least 2 (ln T must be positive)")

    def tail(self, t: int) -> float:
        """``1 - gamma_t``, computed directly so it keeps full precision."""
        if t < 1:
            raise ValueError(f"time index starts at 1, got {t}")
        scale = float(t) ** self.zeta
        if self.c:
            scale *= math.log(self.horizon) ** self.c
        return min(1.0, 1.0 / scale)

    def gamma(self, t: int) -> float:
        # Kept below 1 even when 1 - tail rounds up; use tail() for the level.
        return min(1.0 - self.tail(t), _BELOW_ONE)

    @classmethod
    def from_alpha2(cls, alpha2: float, c: float, horizon: int) -> "QuantileSchedule":
        """zeta = 1 / alpha2~ where alpha2~ = alpha2 / (alpha2 - 1)."""
        if not alpha2 < 0:
            raise ValueError("alpha2 must be negative")
        return cls((alpha2 - 1.0) / alpha2, c, horizon)


def gamma_of_t(schedule: QuantileSchedule, t: int) -> float:
    return schedule.gamma(t)


def _argmax_random_ties(values: np.ndarray, rng: np.random.Generator) -> int:
    best = np.flatnonzero(values == values.max())
    if best.size == 1:
        return int(best[0])
    return int(best[rng.integers(best.size)])


def upper_quantile(p: UnivariateDistribution, tail: float) -> float:
    """The point with mass ``tail`` above it, i.e. the (1 - tail)-quantile."""
    if tail >= _DIRECT_TAIL:
        return float(p.quantile(1.0 - tail))
    return float(p.quantile_from_logsf(math.log(tail)))


def _upper_quantiles(posteriors: Sequence[UnivariateDistribution], tail: float) -> np.ndarray:
    if all(type(p) is Beta for p in posteriors):
        # One vectorized call for the common exact-posterior case.
        a = np.array([p.a for p in posteriors])
        b = np.array([p.b for p in posteriors])
        return special.betainccinv(a, b, tail)
    return np.array([upper_quantile(p, tail) for p in posteriors])


def _quantiles(posteriors: Sequence[UnivariateDistribution], level: float) -> np.ndarray:
    return _upper_quantiles(posteriors, 1.0 - level)


def select_thompson(posteriors: Sequence[UnivariateDistribution], rng: np.random.Generator) -> int:
    draws = np.array([float(p.sample(rng)) for p in posteriors])
    return _argmax_random_ties(draws, rng)


def select_ebucb(
    posteriors: Sequence[UnivariateDistribution], t: int, schedule: QuantileSchedule, rng: np.random.Generator
) -> int:
    """Arm with the largest gamma_t-quantile."""
    return _argmax_random_ties(_upper_quantiles(posteriors, schedule.tail(t)), rng)


def select_bucb(
    posteriors: Sequence[UnivariateDistribution], t: int, c: float, horizon: int, rng: np.random.Generator
) -> int:
    return select_ebucb(posteriors, t, QuantileSchedule(1.0, c, horizon), rng)


@dataclass(frozen=True)
class ThompsonSampling:
    label: str = "thompson"

    def select(self, posteriors, t: int, rng: np.random.Generator) -> int:
        return select_thompson(posteriors, rng)


@dataclass(frozen=True)
class Bucb:
    c: float = 0.0
    horizon: int = 1000
    label: str = "bucb"

    @property
    def schedule(self) -> QuantileSchedule:
        return QuantileSchedule(1.0, self.c, self.horizon)

    def select(self, posteriors, t: int, rng: np.random.Generator) -> int:
        return select_bucb(posteriors, t, self.c, self.horizon, rng)


@dataclass(frozen=True)
class Ebucb:
    schedule: QuantileSchedule = QuantileSchedule()
    label: str = "ebucb"

    def select(self, posteriors, t: int, rng: np.random.Generator) -> int:
        return select_ebucb(posteriors, t, self.schedule, rng)


AgentSpec = ThompsonSampling | Bucb | Ebucb


def theoretical_log_coefficient(mu: Sequence[float], alpha1: float, alpha2: float, xi: float) -> float:
    """Predicted regret per unit of ln T: sum over suboptimal arms of
    ``gap * (1 + xi) * (a1~ / a2~) / d(mu_j, mu_best)``."""
    if not (alpha1 > 1 and alpha2 < 0 and xi > 0):
        raise ValueError("need alpha1 > 1, alpha2 < 0 and xi > 0")
    mu = [float(m) for m in mu]
    best = max(mu)
    i_best = mu.index(best)
    ratio = (alpha1 / (alpha1 - 1.0)) / (alpha2 / (alpha2 - 1.0))
    total = 0.0
    for j, m in enumerate(mu):
        if j == i_best:
            continue
        if m == best:
            raise ValueError("suboptimal arms must have a strictly smaller mean")
        total += (best - m) * (1.0 + xi) * ratio / bernoulli_kl(m, best)
    return total
