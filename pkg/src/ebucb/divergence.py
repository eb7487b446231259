"""Alpha-divergences between distributions on [0, 1].

Two independent numerical routes are provided:

* :func:`alpha_divergence` integrates ``p1^a p2^(1-a)`` over x;
* :func:`alpha_divergence_quantile_form` integrates over quantile levels u,
  using the density ratio ``p2/p1`` evaluated at the p1-quantile of u.

Both write the integrand relative to one of the two densities
(``p1 * expm1((a-1) log(p1/p2))`` and friends) so that no ``I - 1``
cancellation occurs near a = 0 or a = 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dist import LANDMARK_LEVELS, UnivariateDistribution
from .quadrature import integrate

DELTA = 1e-10
INFINITY_THRESHOLD = 1e12
DEFAULT_TOL = 1e-8
# The edge windows feed a ratio test and the extrapolated remainder; they are
# first taken coarsely and recomputed to full accuracy when the tail is slow.
_WINDOW_RTOL = 1e-6
_WINDOW_MAX_INTERVALS = 4096
# Window-to-window ratio (per two decades of x) treated as non-decaying.
# A power-law integrand x^(s-1) has ratio 100^(-s), so 0.9 means s < 0.011.
_RHO_DIVERGENT = 0.9
_RHO_REFINE = 0.1

DIRECT = "direct-integral"
QUANTILE = "quantile-representation"

_SUPPORT_GRID = np.linspace(1e-3, 1 - 1e-3, 199)


@dataclass(frozen=True)
class DivergenceResult:
    value: float
    estimated_abs_error: float
    method: str

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.value)

    def __float__(self) -> float:
        return float(self.value)


class SupportError(ValueError):
    """A density vanishes somewhere inside (0, 1)."""


def check_support(d: UnivariateDistribution) -> None:
    lp = np.asarray(d.logpdf(_SUPPORT_GRID))
    if not np.all(np.isfinite(lp)):
        raise SupportError(f"{d!r} has zero density inside (0, 1)")


def _integrand_pieces(alpha: float, log_ratio: np.ndarray, weight_log: np.ndarray | float = 0.0) -> np.ndarray:
    """Divergence density at nodes where ``log_ratio = log(p1/p2)``.

    ``weight_log`` is log p1 for the x form and 0 for the u form (where
    p1 dx = du).
    """
    with np.errstate(over="ignore", invalid="ignore", under="ignore"):
        if alpha == 1.0:
            return np.exp(weight_log) * log_ratio
        if alpha == 0.0:
            # D_0(P1, P2) = KL(P2, P1) = E_p1[(p2/p1) log(p2/p1)]
            return np.exp(weight_log - log_ratio) * (-log_ratio)
        scale = alpha * (alpha - 1.0)
        if alpha >= 0.5:
            # p1 * expm1((alpha - 1) log(p1/p2))
            z = (alpha - 1.0) * log_ratio
            body = np.where(z < 50.0, np.exp(weight_log) * np.expm1(np.minimum(z, 50.0)), np.exp(weight_log + z))
        else:
            # p2 * expm1(-alpha log(p2/p1))
            z = alpha * log_ratio
            lw = weight_log - log_ratio
            body = np.where(z < 50.0, np.exp(lw) * np.expm1(np.minimum(z, 50.0)), np.exp(lw + z))
        return body / scale


def _edge_tail(window, deep, shallow, outer_win, tol: float):
    """Mass beyond the last window, from adjacent windows next to the endpoint.

    ``deep`` and ``shallow`` split the window nearest the endpoint in two and
    ``outer_win`` is the window next to it.  The two-window ratio rho decides
    divergence (rho near or above one means the integral grows without
    bound).  The remainder past ``deep`` is extrapolated geometrically from
    the half-window ratio, which sits closest to the endpoint and so carries
    the smallest correction to the power-law shape.  Returns (tail, error,
    divergent).
    """
    def parts(**kw):
        out = [integrate(window, list(w), abort_above=INFINITY_THRESHOLD, **kw) for w in (deep, shallow, outer_win)]
        return out if all(math.isfinite(r.value) for r in out) else None

    res = parts(tol=tol * 1e-2, rtol=_WINDOW_RTOL, max_intervals=_WINDOW_MAX_INTERVALS)
    if res is None:
        return math.inf, math.inf, True
    a = res[0].value + res[1].value
    if a == 0.0:
        return 0.0, res[0].error + res[1].error, False
    b = res[2].value
    rho = abs(a / b) if b != 0.0 else math.inf
    if abs(a) <= tol:
        # Negligible window: any remainder is at most a few tol.
        rho = min(rho, 0.5)
        return a / (1.0 - rho), (res[0].error + res[1].error) / (1.0 - rho) + 1e-2 * tol, False
    if rho >= _RHO_DIVERGENT:
        return math.inf, math.inf, True
    if rho > _RHO_REFINE:
        # Slowly decaying tail: the remainder is amplified by 1/(1 - r)^2.
        res = parts(tol=tol * 1e-2 * (1.0 - rho) ** 2)
        if res is None or res[2].value == 0.0:
            return math.inf, math.inf, True
        a = res[0].value + res[1].value
        rho = abs(a / res[2].value)
        if rho >= _RHO_DIVERGENT:
            return math.inf, math.inf, True
    d, sh = res[0].value, res[1].value
    r = d / sh if sh != 0.0 else math.inf
    err_a = res[0].error + res[1].error
    if not 0.0 <= r < 1.0:
        # Sign change or non-monotone window: fall back to the two-window ratio.
        tail = a / (1.0 - rho)
        error = (err_a + rho * res[2].error) / (1.0 - rho) ** 2 + 1e-2 * tol
    else:
        tail = a + d * r / (1.0 - r)
        error = err_a + (res[0].error + r * res[1].error) / (1.0 - r) ** 2 + 1e-2 * tol
        # Shape bias: the two-window estimate carries about 100x the
        # half-window one, so a tenth of their gap bounds it.
        error += 0.1 * abs(tail - a / (1.0 - rho))
    if abs(tail) > INFINITY_THRESHOLD:
        return math.inf, math.inf, True
    return tail, error, False


def _direct_half(p1: UnivariateDistribution, p2: UnivariateDistribution, alpha: float, tol: float):
    """Direct-form contribution of x in (0, 1/2].  Returns (value, error, divergent).

    The integral is taken over [DELTA, 1/2].  The truncated end [0, DELTA]
    is extrapolated from the windows [1e-12, 1e-10] and [1e-10, 1e-8]
    (see :func:`_edge_tail`).
    """

    def f(x):
        l1 = np.asarray(p1.logpdf(x), dtype=float)
        l2 = np.asarray(p2.logpdf(x), dtype=float)
        with np.errstate(invalid="ignore"):
            ratio = np.where(l1 == l2, 0.0, l1 - l2)
        return _integrand_pieces(alpha, ratio, l1)

    tail, tail_err, divergent = _edge_tail(f, (1e-12, 1e-11), (1e-11, DELTA), (DELTA, 1e-8), tol)
    if divergent:
        return math.inf, math.inf, True
    points = np.concatenate([p1.landmarks(), p2.landmarks()])
    inner = np.concatenate([[DELTA, 0.5], points[(points > DELTA) & (points < 0.5)]])
    main = integrate(f, inner, tol=tol, abort_above=INFINITY_THRESHOLD)
    if not math.isfinite(main.value):
        return math.inf, math.inf, True
    return tail + main.value, tail_err + main.error, False


def _finish(value: float, error: float, divergent: bool, method: str) -> DivergenceResult:
    if divergent or not math.isfinite(value) or abs(value) > INFINITY_THRESHOLD:
        return DivergenceResult(math.inf, math.inf, method)
    return DivergenceResult(value, error, method)


def alpha_divergence(
    p1: UnivariateDistribution, p2: UnivariateDistribution, alpha: float, tol: float = DEFAULT_TOL
) -> DivergenceResult:
    """``D_alpha(P1, P2) = (int p1^alpha p2^(1-alpha) dx - 1) / (alpha (alpha - 1))``.

    alpha = 1 gives KL(P1, P2) and alpha = 0 gives KL(P2, P1).  An infinite
    divergence is reported as ``value = inf``.
    """
    alpha = float(alpha)
    if not math.isfinite(alpha) or tol <= 0:
        raise ValueError("alpha must be finite and tol positive")
    check_support(p1)
    check_support(p2)
    if p1 is p2:
        return DivergenceResult(0.0, 0.0, DIRECT)

    # x in (1/2, 1) is handled as the lower half of the mirrored pair.
    value, error = 0.0, 0.0
    for q1, q2 in ((p1, p2), (p1.mirror(), p2.mirror())):
        v, err, divergent = _direct_half(q1, q2, alpha, tol / 2.0)
        if divergent:
            return _finish(math.inf, math.inf, True, DIRECT)
        value += v
        error += err
    return _finish(value, error, False, DIRECT)


def kl_divergence(p1: UnivariateDistribution, p2: UnivariateDistribution, tol: float = DEFAULT_TOL) -> DivergenceResult:
    """``KL(P1, P2) = int p1 log(p1/p2) dx``."""
    return alpha_divergence(p1, p2, 1.0, tol)


def _quantile_half(h, edges: tuple[float, float, float], seeds: np.ndarray, tol: float):
    """Integrate ``h`` over t in [log 2, inf) where ``t = -log`` of a tail probability of P1.

    ``edges`` are the t-values at which the P1 quantile lies 1e-8, 1e-10 and
    1e-12 away from the relevant endpoint.  The strip between the last two
    (and the one before) plays the role of the two x-decades of the direct
    form: it gives both the extrapolated remainder and the divergence test.
    Returns (value, error, divergent).
    """
    t0 = math.log(2.0)
    t8, t10, t12 = edges
    if t8 > t0:
        body, b_win, a_win = (t0, t8), (t8, t10), (t10, t12)
    else:
        # P1 puts more than half its mass within 1e-8 of the endpoint.
        step = 2.0 * math.log(10.0)
        body, b_win, a_win = None, (t0, t0 + step), (t0 + step, t0 + 2 * step)
    mid = 0.5 * (a_win[0] + a_win[1])
    tail, tail_err, divergent = _edge_tail(h, (mid, a_win[1]), (a_win[0], mid), b_win, tol)
    if divergent:
        return math.inf, math.inf, True
    b = integrate(h, list(b_win), tol=tol * 1e-2, abort_above=INFINITY_THRESHOLD)
    if not math.isfinite(b.value):
        return math.inf, math.inf, True
    value, error = b.value + tail, b.error + tail_err
    if body is not None:
        inner = np.concatenate([body, seeds[(seeds > body[0]) & (seeds < body[1])]])
        res = integrate(h, inner, tol=tol, abort_above=INFINITY_THRESHOLD)
        if not math.isfinite(res.value):
            return math.inf, math.inf, True
        value, error = value + res.value, error + res.error
    return value, error, False


def _lower_half(p1: UnivariateDistribution, p2: UnivariateDistribution, alpha: float, tol: float):
    """Quantile-form contribution of P1 levels u in (0, 1/2], integrated in t = -log u."""

    def h(t):
        t = np.asarray(t, dtype=float)
        x = np.asarray(p1.quantile_from_logcdf(-t), dtype=float)
        l1 = np.asarray(p1.logpdf(x), dtype=float)
        l2 = np.asarray(p2.logpdf(x), dtype=float)
        with np.errstate(invalid="ignore"):
            ratio = np.where(l1 == l2, 0.0, l1 - l2)
        return _integrand_pieces(alpha, ratio, -t)

    cuts = np.concatenate([p2.landmarks(), np.array(p1.breakpoints + p2.breakpoints, dtype=float)])
    levels = -np.log(np.array([v for v in LANDMARK_LEVELS if v < 0.5]))
    with np.errstate(divide="ignore"):
        edges = -np.asarray(p1.logcdf(np.array([1e-8, 1e-10, 1e-12])), dtype=float)
        seeds = -np.asarray(p1.logcdf(cuts), dtype=float)
    seeds = np.concatenate([levels, seeds[np.isfinite(seeds)]])
    return _quantile_half(h, tuple(edges), seeds, tol)


def alpha_divergence_quantile_form(
    p1: UnivariateDistribution, p2: UnivariateDistribution, alpha: float, tol: float = DEFAULT_TOL
) -> DivergenceResult:
    """Same divergence integrated over quantile levels of P1.

    The integrand is ``(d/du F2(R1(u)))^(1-alpha) = (p2(R1(u)) / p1(R1(u)))^(1-alpha)``
    with R1 the quantile function of P1.  Each half of the unit interval is
    integrated in ``t = -log u`` (lower half) or ``t = -log(1 - u)`` (upper
    half) through log-space quantiles, since P2 may hold real mass where P1
    has less than 1e-300.
    """
    alpha = float(alpha)
    if not math.isfinite(alpha) or tol <= 0:
        raise ValueError("alpha must be finite and tol positive")
    check_support(p1)
    check_support(p2)
    if p1 is p2:
        return DivergenceResult(0.0, 0.0, QUANTILE)

    # The upper half of P1's levels is the lower half for the mirrored pair
    # (X -> 1 - X), which keeps points near x = 1 at full relative precision.
    value, error = 0.0, 0.0
    for q1, q2 in ((p1, p2), (p1.mirror(), p2.mirror())):
        v, err, divergent = _lower_half(q1, q2, alpha, tol / 2.0)
        if divergent:
            return _finish(math.inf, math.inf, True, QUANTILE)
        value += v
        error += err
    return _finish(value, error, False, QUANTILE)


def bernoulli_kl(p: float, q: float) -> float:
    """``d(p, q) = p log(p/q) + (1-p) log((1-p)/(1-q))`` with 0 log 0 = 0."""
    if not (0.0 <= p <= 1.0 and 0.0 <= q <= 1.0):
        raise ValueError("Bernoulli parameters must lie in [0, 1]")

    def term(x: float, y: float) -> float:
        if x == 0.0:
            return 0.0
        if y == 0.0:
            return math.inf
        return x * math.log(x / y)

    return term(p, q) + term(1.0 - p, 1.0 - q)


def bernoulli_kl_plus(p: float, q: float) -> float:
    return bernoulli_kl(p, q) if p < q else 0.0
