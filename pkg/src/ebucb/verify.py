"""Randomized numerical checks of the divergence, shift and adversary theory.

Each suite returns a list of :class:`Check` records; the CLI prints them and
the test suite asserts on them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .agents import QuantileSchedule
from .approx import Exact, TsAdversary, UcbAdversary, max_adversary_r, verify_single_budget
from .bandit import PosteriorState
from .dist import Beta
from .divergence import DEFAULT_TOL, alpha_divergence, alpha_divergence_quantile_form, kl_divergence
from .shift import (
    ShiftBoundParams,
    extremal_pair,
    g_of_delta,
    measure_shift,
    shift_lower_bound,
    shift_upper_bound,
)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    measured: float
    bound: float

    def line(self) -> str:
        return f"CHECK {self.name} {'pass' if self.passed else 'fail'} {self.measured!r} {self.bound!r}"


def _random_beta(rng: np.random.Generator, lo: float = 1.0, hi: float = 30.0) -> Beta:
    a, b = rng.uniform(lo, hi, 2)
    return Beta(float(a), float(b))


def divergence_checks(trials: int = 200, tol: float = DEFAULT_TOL, seed: int = 0) -> list[Check]:
    u, b = Beta(1, 1), Beta(2, 1)
    checks = []
    for name, got, want in (
        ("closed_form_alpha_half", alpha_divergence(u, b, 0.5, tol).value, -4 * (2 * math.sqrt(2) / 3 - 1)),
        ("closed_form_kl", kl_divergence(u, b, tol).value, 1 - math.log(2)),
        ("closed_form_reverse_kl", kl_divergence(b, u, tol).value, math.log(2) - 0.5),
    ):
        checks.append(Check(name, abs(got - want) <= 1e-6, abs(got - want), 1e-6))
    inf = alpha_divergence(u, b, 2.0, tol).value
    checks.append(Check("divergent_alpha_two", math.isinf(inf), inf, math.inf))

    rng = np.random.default_rng(seed)
    worst_dual = worst_sym = 0.0
    for _ in range(trials):
        p, q = _random_beta(rng), _random_beta(rng)
        direct = alpha_divergence(p, q, 0.5, tol).value
        worst_dual = max(worst_dual, abs(direct - alpha_divergence_quantile_form(p, q, 0.5, tol).value))
        # The mirrored statement through the other representation.
        worst_sym = max(worst_sym, abs(direct - alpha_divergence_quantile_form(q, p, 0.5, tol).value))
    checks.append(Check("dual_representation", worst_dual <= 5e-8, worst_dual, 5e-8))
    checks.append(Check("symmetry_half", worst_sym <= 5e-8, worst_sym, 5e-8))

    worst = 0.0
    for _ in range(max(trials // 10, 1)):
        p, q = _random_beta(rng), _random_beta(rng)
        for a in (-2.0, -1.0, 0.0, 1.0, 2.0, 3.0):
            d1 = alpha_divergence(p, q, a, tol).value
            d2 = alpha_divergence_quantile_form(q, p, 1.0 - a, tol).value
            if math.isfinite(d1) != math.isfinite(d2):
                worst = math.inf
            elif math.isfinite(d1):
                worst = max(worst, abs(d1 - d2) / max(1.0, abs(d1)))
    checks.append(Check("symmetry_alpha_grid", worst <= 2 * tol, worst, 2 * tol))

    state = PosteriorState((3, 1), (5, 2))
    zero = max(verify_single_budget(Exact(), state, None, j, 1e-12, a).d_alpha for j in (0, 1) for a in (-1.0, 0.5, 2.0))
    checks.append(Check("exact_scheme_zero", zero == 0.0, zero, 0.0))
    return checks


def exact_max_shift(gamma: float, epsilon: float, alpha: float) -> float:
    """Largest delta > 0 with g(delta) <= epsilon (the extremal construction's reach)."""
    hi = 1.0 - gamma
    if g_of_delta(gamma, hi, alpha) <= epsilon:
        return hi
    return optimize.brentq(lambda d: g_of_delta(gamma, d, alpha) - epsilon, 0.0, hi, xtol=1e-15, rtol=1e-15)


def shift_checks(trials: int = 500, seed: int = 0, tol: float = DEFAULT_TOL) -> list[Check]:
    rng = np.random.default_rng(seed)
    worst_a = worst_b = worst_tight = worst_measure = -math.inf
    worst_exact = -math.inf
    for i in range(trials):
        p1 = _random_beta(rng)
        gamma = float(rng.uniform(0.5, 0.99))
        delta = float(rng.uniform(-gamma + 1e-3, 1.0 - gamma - 1e-3))
        p2 = extremal_pair(p1, gamma, delta)
        shift = measure_shift(p1, p2, gamma)
        worst_measure = max(worst_measure, abs(shift - delta))
        if i % 2 == 0:
            alpha = float(rng.choice([1.5, 2.0, 3.0]))
            eps = alpha_divergence(p1, p2, alpha, tol).value
            worst_tight = max(worst_tight, abs(eps - g_of_delta(gamma, delta, alpha)))
            if eps > 0:
                bound = shift_upper_bound(ShiftBoundParams(gamma, eps, alpha))
                worst_a = max(worst_a, shift - bound)
                worst_exact = max(worst_exact, exact_max_shift(gamma, eps, alpha) - bound)
        else:
            alpha = float(rng.choice([-0.5, -1.0, -2.0]))
            eps = alpha_divergence(p1, p2, alpha, tol).value
            worst_tight = max(worst_tight, abs(eps - g_of_delta(gamma, delta, alpha)))
            if eps > 0:
                bound = shift_lower_bound(ShiftBoundParams(gamma, eps, alpha))
                worst_b = max(worst_b, bound - shift)
    checks = [
        Check("upper_bound_soundness", worst_a <= 1e-8, worst_a, 1e-8),
        Check("lower_bound_soundness", worst_b <= 1e-8, worst_b, 1e-8),
        Check("extremal_reach_within_upper_bound", worst_exact <= 1e-8, worst_exact, 1e-8),
        Check("extremal_divergence_equals_g", worst_tight <= 1e-7, worst_tight, 1e-7),
        Check("extremal_measured_shift", worst_measure <= 1e-10, worst_measure, 1e-10),
    ]
    # Without alpha outside [0, 1] there is no control: alpha = 1/2 with
    # eps = 1/(-alpha(alpha-1)) = 4 lets the shift reach both ends.
    worst_d = -math.inf
    worst_reach = 0.0
    for _ in range(5):
        p1 = _random_beta(rng)
        gamma = float(rng.uniform(0.5, 0.99))
        for delta in (-gamma + 0.01, 1.0 - gamma - 0.01):
            p2 = extremal_pair(p1, gamma, delta)
            worst_d = max(worst_d, alpha_divergence(p1, p2, 0.5, tol).value)
            worst_reach = max(worst_reach, abs(measure_shift(p1, p2, gamma) - delta))
    checks.append(Check("half_alpha_counterexample_divergence", worst_d <= 4.0, worst_d, 4.0))
    checks.append(Check("half_alpha_counterexample_shift", worst_reach <= 1e-10, worst_reach, 1e-10))
    return checks


def random_states(rng: np.random.Generator, n: int, mu=(0.7, 0.3), max_pulls: int = 2000) -> list[PosteriorState]:
    out = []
    for _ in range(n):
        N = rng.integers(0, max_pulls + 1, len(mu))
        S = rng.binomial(N, mu)
        out.append(PosteriorState(tuple(S), tuple(N)))
    return out


def adversary_checks(
    scheme: str, epsilon: float, alpha: float, r: float | None = None, states: int = 50, seed: int = 0,
    schedule: QuantileSchedule | None = None,
) -> list[Check]:
    """Budget compliance ``D_alpha(Q, Pi) <= eps + 1e-6`` of one adversary over random states."""
    r_max = max_adversary_r(epsilon, alpha)
    if r is None:
        r = 0.99 * r_max if math.isfinite(r_max) else 2.0
    if scheme == "ts":
        adv, arm = TsAdversary(r), 0
    elif scheme == "ucb":
        adv, arm = UcbAdversary(r), 1
    else:
        raise ValueError(f"unknown adversary {scheme!r}")
    schedule = schedule or QuantileSchedule(2.0, 0.0, 10**4)
    rng = np.random.default_rng(seed)
    worst = -math.inf
    for st in random_states(rng, states):
        rep = verify_single_budget(adv, st, None, arm, epsilon, alpha, 1e-6, schedule)
        worst = max(worst, rep.d_alpha)
    tag = f"{scheme}_alpha{alpha:g}_eps{epsilon:g}"
    return [
        Check(f"r_admissible_{tag}", r <= r_max, r, r_max),
        Check(f"budget_{tag}", worst <= epsilon + 1e-6, worst, epsilon + 1e-6),
    ]
