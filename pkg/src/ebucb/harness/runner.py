"""Replication loop, seeding and aggregation."""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..approx import approx_posterior
from ..bandit import BernoulliEnv, PosteriorState, RegretTrace
from .config import ExperimentConfig


def replication_seed(base_seed: int, rep: int) -> int:
    """64-bit seed for replication ``rep``.

    Uses numpy's SeedSequence hash of the pair, so the seed of replication
    ``rep`` does not depend on how many replications are run.
    """
    state = np.random.SeedSequence([int(base_seed) & 0xFFFFFFFFFFFFFFFF, int(rep)]).generate_state(2, np.uint32)
    return int(state[0]) | (int(state[1]) << 32)


def run_replication(config: ExperimentConfig, rep: int) -> RegretTrace:
    """Run t = 1..T once.

    Rewards come from a per-arm table of uniforms drawn up front, so the
    n-th pull of arm j sees the same reward under every agent; the agent's
    own randomness uses a second, independent stream.
    """
    seed = replication_seed(config.base_seed, rep)
    reward_ss, agent_ss = np.random.SeedSequence(seed).spawn(2)
    env = BernoulliEnv(config.mu)
    k, horizon = env.k, config.horizon
    table = np.random.default_rng(reward_ss).random((k, horizon)) < np.array(env.mu)[:, None]
    rng = np.random.default_rng(agent_ss)
    S = [0] * k
    N = [0] * k
    actions = np.empty(horizon, dtype=np.int64)
    scheme, agent, schedule = config.scheme, config.agent, config.schedule
    for t in range(1, horizon + 1):
        state = PosteriorState(tuple(S), tuple(N))
        posteriors = [approx_posterior(scheme, state, t - 1, j, schedule) for j in range(k)]
        arm = agent.select(posteriors, t, rng)
        S[arm] += int(table[arm, N[arm]])
        N[arm] += 1
        actions[t - 1] = arm
    cum = np.cumsum(env.gaps[actions])
    return RegretTrace(horizon, cum, np.bincount(actions, minlength=k), seed, actions, PosteriorState(tuple(S), tuple(N)))


def _run_one(args):
    return run_replication(*args)


def run_experiment(config: ExperimentConfig, jobs: int | None = 1) -> list[RegretTrace]:
    """All replications, returned in replication order."""
    tasks = [(config, rep) for rep in range(config.replications)]
    if jobs is None:
        jobs = os.cpu_count() or 1
    if jobs <= 1 or len(tasks) == 1:
        return [_run_one(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=min(jobs, len(tasks))) as pool:
        return list(pool.map(_run_one, tasks))


@dataclass(frozen=True)
class AggregateResult:
    agent: str
    scheme: str
    mean: np.ndarray
    stderr: np.ndarray

    @property
    def horizon(self) -> int:
        return int(self.mean.size)


def aggregate(traces: list[RegretTrace], agent: str = "", scheme: str = "") -> AggregateResult:
    """Pointwise mean and standard error (sample sd / sqrt(R); zero when R = 1)."""
    if not traces:
        raise ValueError("nothing to aggregate")
    horizons = {tr.horizon for tr in traces}
    if len(horizons) != 1:
        raise ValueError(f"traces have different horizons {sorted(horizons)}")
    data = np.vstack([tr.cum_regret for tr in traces])
    mean = data.mean(axis=0)
    if len(traces) == 1:
        stderr = np.zeros_like(mean)
    else:
        stderr = data.std(axis=0, ddof=1) / np.sqrt(len(traces))
    # Where every replication agrees (e.g. before the first suboptimal pull)
    # report that value exactly rather than a rounded average.
    same = np.all(data == data[0], axis=0)
    mean[same] = data[0, same]
    stderr[same] = 0.0
    return AggregateResult(agent, scheme, mean, stderr)


def regret_slope(mean: np.ndarray, t_from: int, t_to: int) -> float:
    """Least-squares slope of a cumulative-regret curve over t in [t_from, t_to] (1-based)."""
    t = np.arange(t_from, t_to + 1, dtype=float)
    y = np.asarray(mean, dtype=float)[t_from - 1 : t_to]
    return float(np.polyfit(t, y, 1)[0])
