"""Bernoulli bandit environment and exact Beta posterior bookkeeping."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .dist import Beta


@dataclass(frozen=True)
class BernoulliEnv:
    mu: tuple[float, ...]

    def __post_init__(self):
        mu = tuple(float(m) for m in self.mu)
        object.__setattr__(self, "mu", mu)
        if len(mu) < 2:
            raise ValueError("a bandit needs at least two arms")
        if any(not 0.0 <= m <= 1.0 for m in mu):
            raise ValueError(f"Bernoulli means must lie in [0, 1], got {mu}")

    @property
    def k(self) -> int:
        return len(self.mu)

    @property
    def best(self) -> float:
        return max(self.mu)

    @property
    def gaps(self) -> np.ndarray:
        return self.best - np.array(self.mu)


@dataclass(frozen=True)
class PosteriorState:
    """Per-arm success counts ``S`` and pull counts ``N``."""

    S: tuple[int, ...]
    N: tuple[int, ...]

    def __post_init__(self):
        S = tuple(int(s) for s in self.S)
        N = tuple(int(n) for n in self.N)
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "N", N)
        if len(S) != len(N):
            raise ValueError("S and N must have one entry per arm")
        if any(not 0 <= s <= n for s, n in zip(S, N)):
            raise ValueError(f"need 0 <= S_j <= N_j, got S={S}, N={N}")

    @classmethod
    def fresh(cls, k: int) -> "PosteriorState":
        return cls((0,) * k, (0,) * k)

    @property
    def k(self) -> int:
        return len(self.S)

    @property
    def t(self) -> int:
        """Number of observations so far."""
        return sum(self.N)


@dataclass
class RegretTrace:
    horizon: int
    cum_regret: np.ndarray
    pulls: np.ndarray
    seed: int
    actions: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))
    final_state: PosteriorState | None = None


def pull(env: BernoulliEnv, arm: int, rng: np.random.Generator) -> int:
    if not 0 <= arm < env.k:
        raise IndexError(f"arm {arm} out of range for {env.k} arms")
    return int(rng.random() < env.mu[arm])


def update(state: PosteriorState, arm: int, reward: int) -> PosteriorState:
    """Posterior after observing ``reward`` from ``arm``; other arms are unchanged."""
    if reward not in (0, 1):
        raise ValueError(f"reward must be 0 or 1, got {reward}")
    S = list(state.S)
    N = list(state.N)
    S[arm] += reward
    N[arm] += 1
    return PosteriorState(tuple(S), tuple(N))


def exact_posterior(state: PosteriorState, arm: int) -> Beta:
    """Beta(1 + S, 1 + N - S) under the uniform prior."""
    s, n = state.S[arm], state.N[arm]
    return Beta(1.0 + s, 1.0 + n - s)


def regret_increment(env: BernoulliEnv, arm: int) -> float:
    """Pseudo-regret of one pull of ``arm``."""
    if not 0 <= arm < env.k:
        raise IndexError(f"arm {arm} out of range for {env.k} arms")
    return env.best - env.mu[arm]


def pseudo_regret(env: BernoulliEnv, pulls: Sequence[int]) -> float:
    return float(np.dot(env.gaps, np.asarray(pulls, dtype=float)))
