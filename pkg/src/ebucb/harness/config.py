"""Flat ``key = value`` experiment configs.

One file describes one experiment; every agent listed under ``agents`` gets
its own :class:`ExperimentConfig`, all sharing the same seeds so that the
agents face the same reward sequences.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path

from ..agents import Bucb, Ebucb, QuantileSchedule, ThompsonSampling
from ..approx import DivergenceBudget, Exact, Mixture, TsAdversary, UcbAdversary, r_for_switch_time


class ConfigError(ValueError):
    pass


KNOWN_KEYS = {
    "name", "mu", "horizon", "replications", "agents", "zeta", "c", "scheme", "w", "gamma_scale",
    "r", "switch_time", "base_seed", "epsilon", "alpha1", "alpha2", "out_dir",
}


@dataclass(frozen=True)
class ExperimentConfig:
    name: str
    mu: tuple[float, ...]
    horizon: int
    replications: int
    agent: object
    scheme: object
    schedule: QuantileSchedule
    base_seed: int = 0
    budget: DivergenceBudget | None = None
    out_dir: str = "results"

    @property
    def agent_label(self) -> str:
        return self.agent.label

    @property
    def scheme_label(self) -> str:
        s = self.scheme
        if isinstance(s, Mixture):
            return f"mixture(w={s.w:g} G={s.gamma_scale:g})"
        if isinstance(s, (TsAdversary, UcbAdversary)):
            return f"{s.name}(r={s.r:.6g})"
        return s.name


def parse_config_text(text: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in KNOWN_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in out:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        out[key] = value
    return out


def _num(kv: dict, key: str, default=None, cast=float):
    if key not in kv:
        if default is None:
            raise ConfigError(f"missing required key {key!r}")
        return default
    try:
        return cast(kv[key])
    except ValueError as exc:
        raise ConfigError(f"{key}: cannot parse {kv[key]!r}") from exc


def build_configs(kv: dict[str, str], seed: int | None = None, out_dir: str | None = None) -> list[ExperimentConfig]:
    """One config per listed agent."""
    try:
        mu = tuple(float(v) for v in kv.get("mu", "").split(","))
    except ValueError as exc:
        raise ConfigError(f"mu: cannot parse {kv.get('mu')!r}") from exc
    if len(mu) < 2 or any(not 0 <= m <= 1 for m in mu):
        raise ConfigError("mu needs at least two values in [0, 1]")
    horizon = _num(kv, "horizon", cast=int)
    reps = _num(kv, "replications", 1, int)
    if horizon < 1 or reps < 1:
        raise ConfigError("horizon and replications must be positive")
    zeta = _num(kv, "zeta", 2.0)
    c = _num(kv, "c", 0.0)
    base_seed = seed if seed is not None else _num(kv, "base_seed", 0, int)
    name = kv.get("name", "experiment")
    budget = None
    if "epsilon" in kv:
        try:
            budget = DivergenceBudget(_num(kv, "epsilon"), _num(kv, "alpha1", 2.0), _num(kv, "alpha2", -1.0))
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    try:
        ebucb_schedule = QuantileSchedule(zeta, c, horizon)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    scheme_name = kv.get("scheme", "exact")
    agents = [a.strip() for a in kv.get("agents", "ebucb").split(",") if a.strip()]
    if not agents:
        raise ConfigError("agents: need at least one agent")
    configs = []
    for label in agents:
        if label == "thompson":
            agent, schedule = ThompsonSampling(), ebucb_schedule
        elif label == "bucb":
            agent = Bucb(c, horizon)
            schedule = agent.schedule
        elif label == "ebucb":
            agent, schedule = Ebucb(ebucb_schedule), ebucb_schedule
        else:
            raise ConfigError(f"unknown agent {label!r} (expected thompson, bucb or ebucb)")
        try:
            scheme = _build_scheme(scheme_name, kv, schedule)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        if isinstance(scheme, (TsAdversary, UcbAdversary)) and len(mu) != 2:
            raise ConfigError("adversarial schemes need exactly two arms")
        configs.append(
            ExperimentConfig(name, mu, horizon, reps, agent, scheme, schedule, base_seed, budget,
                             out_dir if out_dir is not None else kv.get("out_dir", "results"))
        )
    return configs


def _build_scheme(name: str, kv: dict, schedule: QuantileSchedule):
    if name == "exact":
        return Exact()
    if name == "mixture":
        return Mixture(_num(kv, "w"), _num(kv, "gamma_scale"))
    if name in ("ts_adversary", "ucb_adversary"):
        cls = TsAdversary if name == "ts_adversary" else UcbAdversary
        if "switch_time" in kv:
            # r solves gamma_{T0} = 1/r under this agent's own schedule.
            return cls(r_for_switch_time(schedule, _num(kv, "switch_time", cast=int)))
        return cls(_num(kv, "r"))
    raise ConfigError(f"unknown scheme {name!r}")


def load_config(path: str | Path, seed: int | None = None, out_dir: str | None = None) -> list[ExperimentConfig]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror or exc}") from exc
    return build_configs(parse_config_text(text), seed, out_dir)


def with_horizon(cfg: ExperimentConfig, horizon: int) -> ExperimentConfig:
    """Same experiment at another horizon (the schedule follows T)."""
    schedule = replace(cfg.schedule, horizon=horizon)
    agent = cfg.agent
    if isinstance(agent, Bucb):
        agent = replace(agent, horizon=horizon)
    elif isinstance(agent, Ebucb):
        agent = replace(agent, schedule=schedule)
    return replace(cfg, horizon=horizon, schedule=schedule, agent=agent)


__all__ = ["ConfigError", "ExperimentConfig", "build_configs", "load_config", "parse_config_text", "with_horizon"]
