"""Univariate distributions on [0, 1].

Three concrete forms are used throughout the package: :class:`Beta` (the
exact posterior), :class:`BetaMixture` (misspecified posteriors) and
:class:`PiecewiseReweighted` (a base density rescaled by one factor below a
breakpoint and another above it, used for extremal and adversarial
constructions).

All methods accept scalars or arrays.  Tail probabilities are also available
in log space so that constructions built on concentrated posteriors keep
working after ``F(b)`` or ``1 - F(b)`` underflows a double.
"""
from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import optimize, special

# Returned by beta_pdf at an endpoint where the density is unbounded.
PDF_SATURATION = 1e300

# Quantile levels handed to the quadrature as initial partition points.
LANDMARK_LEVELS = (1e-9, 1e-6, 1e-3, 0.02, 0.1, 0.25, 0.5, 0.75, 0.9, 0.98, 0.999, 1 - 1e-6, 1 - 1e-9)

_TINY = 1e-290
# scipy's Beta inversions are checked by round trip below this level.
_VERIFY_BELOW = 1e-60
_LOG_VERIFY_BELOW = math.log(_VERIFY_BELOW)
# Below this log-probability mixture quantiles are solved in log space.
_LOG_TAIL_SWITCH = math.log(1e-3)


def _out(x: np.ndarray):
    return x[()] if x.ndim == 0 else x


# ---------------------------------------------------------------------------
# Regularized incomplete beta in log space
# ---------------------------------------------------------------------------

def _betacf(a: float, b: float, x: float, max_iter: int = 20000, eps: float = 1e-16) -> float:
    """Continued fraction for I_x(a, b), modified Lentz."""
    fpmin = 1e-300
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < fpmin:
        d = fpmin
    d = 1.0 / d
    h = d
    for m in range(1, max_iter + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < fpmin:
            d = fpmin
        c = 1.0 + aa / c
        if abs(c) < fpmin:
            c = fpmin
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < fpmin:
            d = fpmin
        c = 1.0 + aa / c
        if abs(c) < fpmin:
            c = fpmin
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < eps:
            return h
    raise ArithmeticError(f"incomplete beta continued fraction did not converge (a={a}, b={b}, x={x})")


def log_betainc(a: float, b: float, x: float) -> float:
    """Natural log of the regularized incomplete beta function I_x(a, b).

    Evaluated by continued fraction, with the symmetry swap
    ``I_x(a, b) = 1 - I_{1-x}(b, a)`` for x above the mean a / (a + b).
    Stays finite far into the tails, where the value itself underflows.
    """
    if x <= 0.0:
        return -math.inf
    if x >= 1.0:
        return 0.0
    log_front = a * math.log(x) + b * math.log1p(-x) - special.betaln(a, b)
    if x < a / (a + b):
        return log_front + math.log(_betacf(a, b, x)) - math.log(a)
    upper = math.exp(log_front + math.log(_betacf(b, a, 1.0 - x)) - math.log(b))
    return math.log1p(-upper) if upper < 1.0 else -math.inf


def _safeguarded_newton(
    f: Callable[[float], float],
    fprime: Callable[[float], float],
    lo: float,
    hi: float,
    x0: float,
    xtol: float = 1e-15,
    ftol: float = 0.0,
    max_iter: int = 200,
) -> float:
    """Root of an increasing function on [lo, hi]; Newton steps, bisection fallback."""
    x = min(max(x0, lo), hi)
    for _ in range(max_iter):
        fx = f(x)
        if fx == 0.0 or abs(fx) <= ftol:
            return x
        if fx > 0:
            hi = x
        else:
            lo = x
        if hi - lo <= xtol * max(abs(x), 1e-300):
            return 0.5 * (lo + hi)
        d = fprime(x)
        step_ok = d > 0 and math.isfinite(d)
        if step_ok:
            xn = x - fx / d
            step_ok = lo < xn < hi
        x = xn if step_ok else 0.5 * (lo + hi)
    return x


# ---------------------------------------------------------------------------
# Distribution interface
# ---------------------------------------------------------------------------

class UnivariateDistribution(ABC):
    """Absolutely continuous distribution supported on [0, 1]."""

    breakpoints: tuple[float, ...] = ()

    @abstractmethod
    def logpdf(self, x): ...

    @abstractmethod
    def cdf(self, x): ...

    @abstractmethod
    def quantile(self, u): ...

    @abstractmethod
    def sample(self, rng: np.random.Generator, size=None): ...

    def pdf(self, x):
        with np.errstate(over="ignore"):
            return _out(np.exp(np.asarray(self.logpdf(x), dtype=float)))

    def sf(self, x):
        return _out(1.0 - np.asarray(self.cdf(x), dtype=float))

    def logcdf(self, x):
        with np.errstate(divide="ignore"):
            return _out(np.log(np.asarray(self.cdf(x), dtype=float)))

    def logsf(self, x):
        with np.errstate(divide="ignore"):
            return _out(np.log(np.asarray(self.sf(x), dtype=float)))

    def quantile_from_logcdf(self, logu):
        return self.quantile(np.exp(logu))

    def quantile_from_logsf(self, logs):
        return self.quantile(-np.expm1(logs))

    def mirror(self) -> "UnivariateDistribution":
        """The law of 1 - X."""
        raise NotImplementedError(f"{type(self).__name__} has no mirror image")

    def landmarks(self) -> np.ndarray:
        """Interior points locating the bulk of the mass (quadrature seeds)."""
        pts = np.atleast_1d(np.asarray(self.quantile(np.array(LANDMARK_LEVELS)), dtype=float))
        return np.unique(np.concatenate([pts, np.array(self.breakpoints, dtype=float)]))


@dataclass(frozen=True)
class Beta(UnivariateDistribution):
    """Beta(a, b) distribution."""

    a: float
    b: float

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0 and math.isfinite(self.a) and math.isfinite(self.b)):
            raise ValueError(f"Beta shape parameters must be positive and finite, got a={self.a}, b={self.b}")

    @property
    def mean(self) -> float:
        return self.a / (self.a + self.b)

    def logpdf(self, x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = special.xlogy(self.a - 1.0, x) + special.xlog1py(self.b - 1.0, -x) - special.betaln(self.a, self.b)
        out = np.where((x < 0) | (x > 1), -np.inf, out)
        return _out(out)

    def cdf(self, x):
        x = np.clip(np.asarray(x, dtype=float), 0.0, 1.0)
        return _out(special.betainc(self.a, self.b, x))

    def sf(self, x):
        x = np.clip(np.asarray(x, dtype=float), 0.0, 1.0)
        return _out(special.betaincc(self.a, self.b, x))

    def logcdf(self, x):
        x = np.clip(np.asarray(x, dtype=float), 0.0, 1.0)
        xf = x.reshape(-1)
        c = special.betainc(self.a, self.b, xf)
        with np.errstate(divide="ignore"):
            out = np.log(c)
        for i in np.flatnonzero((c < _TINY) & (xf > 0)):
            out[i] = log_betainc(self.a, self.b, float(xf[i]))
        return _out(out.reshape(x.shape))

    def logsf(self, x):
        x = np.clip(np.asarray(x, dtype=float), 0.0, 1.0)
        xf = x.reshape(-1)
        s = special.betaincc(self.a, self.b, xf)
        with np.errstate(divide="ignore"):
            out = np.log(s)
        for i in np.flatnonzero((s < _TINY) & (xf < 1)):
            out[i] = log_betainc(self.b, self.a, 1.0 - float(xf[i]))
        return _out(out.reshape(x.shape))

    def _inverse_lower(self, logp: np.ndarray) -> np.ndarray:
        """x with log F(x) = logp (flat array), scipy first, log-space solver as fallback."""
        with np.errstate(under="ignore", invalid="ignore"):
            x = np.array(special.betaincinv(self.a, self.b, np.exp(logp)), dtype=float)
        # betaincinv returns stray roots for some levels below about e^-150;
        # accept x only if log F(x) reproduces logp up to the rounding of x.
        with np.errstate(all="ignore"):
            got = np.log(special.betainc(self.a, self.b, x))
            slack = 4.0 * np.exp(self.logpdf(x) - logp) * np.spacing(x)
        ok = np.abs(got - logp) <= 1e-9 * np.maximum(1.0, np.abs(logp)) + slack
        for i in np.flatnonzero(~ok & np.isfinite(logp) & (logp < math.log(0.5))):
            x[i] = self._lower_tail_quantile(float(logp[i]))
        return x

    def quantile(self, u):
        u = np.asarray(u, dtype=float)
        with np.errstate(invalid="ignore"):
            lower = special.betaincinv(self.a, self.b, np.minimum(u, 0.5))
            upper = special.betainccinv(self.a, self.b, np.maximum(1.0 - u, 0.0))
        out = np.where(u <= 0.5, lower, upper)
        deep = (u > 0.0) & (u < _VERIFY_BELOW)
        if np.any(deep):
            out = np.array(out, dtype=float)
            out[deep] = self._inverse_lower(np.log(u[deep]))
        out = np.where(u <= 0.0, 0.0, np.where(u >= 1.0, 1.0, out))
        return _out(out)

    def _lower_tail_quantile(self, logu: float) -> float:
        # Solve log F(x) = logu in t = log x, deep in the lower tail.
        a, b = self.a, self.b

        def f(t):
            return log_betainc(a, b, math.exp(t)) - logu

        def fprime(t):
            x = math.exp(t)
            lpdf = (a - 1.0) * t + (b - 1.0) * math.log1p(-x) - special.betaln(a, b)
            return math.exp(t + lpdf - log_betainc(a, b, x))

        t0 = (logu + math.log(a) + special.betaln(a, b)) / a
        hi = math.log(self.mean)
        lo = min(t0 - 50.0, -745.0)
        return math.exp(_safeguarded_newton(f, fprime, lo, hi, min(t0, hi), xtol=1e-15))

    def quantile_from_logcdf(self, logu):
        logu = np.asarray(logu, dtype=float)
        lf = logu.reshape(-1)
        with np.errstate(under="ignore"):
            out = np.array(self.quantile(np.exp(lf)), dtype=float)
        deep = lf < _LOG_VERIFY_BELOW
        out[deep] = self._inverse_lower(lf[deep])
        out = np.where(np.isneginf(lf), 0.0, out)
        return _out(out.reshape(logu.shape))

    def quantile_from_logsf(self, logs):
        logs = np.asarray(logs, dtype=float)
        lf = logs.reshape(-1)
        with np.errstate(under="ignore"):
            out = np.array(special.betainccinv(self.a, self.b, np.exp(lf)), dtype=float)
        # The flipped distribution carries the upper tail as a lower tail.
        deep = lf < _LOG_VERIFY_BELOW
        out[deep] = 1.0 - self.mirror()._inverse_lower(lf[deep])
        out = np.where(np.isneginf(lf), 1.0, np.where(lf >= 0, 0.0, out))
        return _out(out.reshape(logs.shape))

    def sample(self, rng: np.random.Generator, size=None):
        return rng.beta(self.a, self.b, size)

    def mirror(self) -> "Beta":
        return Beta(self.b, self.a)


BetaParams = Beta


@dataclass(frozen=True)
class BetaMixture(UnivariateDistribution):
    """Finite mixture of Beta components; quantiles by numeric inversion."""

    weights: tuple[float, ...]
    components: tuple[Beta, ...]

    def __post_init__(self):
        w = tuple(float(v) for v in self.weights)
        comps = tuple(self.components)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "components", comps)
        if len(w) == 0 or len(w) != len(comps):
            raise ValueError("mixture needs at least one component and one weight per component")
        if any(v < 0 for v in w) or abs(sum(w) - 1.0) > 1e-12:
            raise ValueError(f"mixture weights must be nonnegative and sum to 1, got {w}")
        object.__setattr__(self, "_w", np.array(w))
        object.__setattr__(self, "_a", np.array([c.a for c in comps]))
        object.__setattr__(self, "_b", np.array([c.b for c in comps]))

    def logpdf(self, x):
        x = np.asarray(x, dtype=float)
        terms = [math.log(w) + np.asarray(c.logpdf(x)) for w, c in zip(self.weights, self.components) if w > 0]
        return _out(np.logaddexp.reduce(np.stack(terms), axis=0))

    def cdf(self, x):
        x = np.clip(np.asarray(x, dtype=float), 0.0, 1.0)
        return _out(np.tensordot(self._w, special.betainc(self._a[:, None], self._b[:, None], x.ravel()), axes=1).reshape(x.shape))

    def sf(self, x):
        x = np.clip(np.asarray(x, dtype=float), 0.0, 1.0)
        return _out(np.tensordot(self._w, special.betaincc(self._a[:, None], self._b[:, None], x.ravel()), axes=1).reshape(x.shape))

    def _quantile_scalar(self, u: float) -> float:
        if u <= 0.0:
            return 0.0
        if u >= 1.0:
            return 1.0
        qs = [float(c.quantile(u)) for c in self.components]
        lo, hi = min(qs), max(qs)
        if hi - lo <= 0.0:
            return lo
        w, a, b = self._w, self._a, self._b
        upper = u > 0.5
        s = 1.0 - u

        # The mixture cdf at the smallest component quantile is <= u and at
        # the largest is >= u, so [lo, hi] always brackets the answer.
        def f(x):
            if upper:
                return s - float(w @ special.betaincc(a, b, x))
            return float(w @ special.betainc(a, b, x)) - u

        def fprime(x):
            with np.errstate(divide="ignore", invalid="ignore"):
                return float(w @ np.exp(special.xlogy(a - 1, x) + special.xlog1py(b - 1, -x) - special.betaln(a, b)))

        x0 = float(w @ np.array(qs))
        return _safeguarded_newton(f, fprime, lo, hi, x0, xtol=1e-16, ftol=1e-16)

    def quantile(self, u):
        u = np.asarray(u, dtype=float)
        out = np.array([self._quantile_scalar(float(v)) for v in u.ravel()]).reshape(u.shape)
        return _out(out)

    def logcdf(self, x):
        x = np.asarray(x, dtype=float)
        terms = [math.log(w) + np.asarray(c.logcdf(x)) for w, c in zip(self.weights, self.components) if w > 0]
        return _out(np.logaddexp.reduce(np.stack(terms), axis=0))

    def logsf(self, x):
        x = np.asarray(x, dtype=float)
        terms = [math.log(w) + np.asarray(c.logsf(x)) for w, c in zip(self.weights, self.components) if w > 0]
        return _out(np.logaddexp.reduce(np.stack(terms), axis=0))

    def _log_tail_quantile(self, logp: float, upper: bool) -> float:
        # Component quantiles at the same level bracket the mixture quantile.
        if upper:
            qs = [float(c.quantile_from_logsf(logp)) for c in self.components]
            g = lambda x: logp - float(self.logsf(x))
        else:
            qs = [float(c.quantile_from_logcdf(logp)) for c in self.components]
            g = lambda x: float(self.logcdf(x)) - logp
        lo, hi = min(qs), max(qs)
        if hi - lo <= 0.0 or g(lo) >= 0.0:
            return lo
        if g(hi) <= 0.0:
            return hi
        return optimize.brentq(g, lo, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps)

    def quantile_from_logcdf(self, logu):
        logu = np.asarray(logu, dtype=float)
        out = [
            self._quantile_scalar(math.exp(v)) if v > _LOG_TAIL_SWITCH else self._log_tail_quantile(v, False)
            for v in logu.ravel()
        ]
        return _out(np.array(out, dtype=float).reshape(logu.shape))

    def quantile_from_logsf(self, logs):
        logs = np.asarray(logs, dtype=float)
        out = [
            self._quantile_scalar(-math.expm1(v)) if v > _LOG_TAIL_SWITCH else self._log_tail_quantile(v, True)
            for v in logs.ravel()
        ]
        return _out(np.array(out, dtype=float).reshape(logs.shape))

    def landmarks(self) -> np.ndarray:
        return np.unique(np.concatenate([c.landmarks() for c in self.components]))

    def mirror(self) -> "BetaMixture":
        return BetaMixture(self.weights, tuple(c.mirror() for c in self.components))

    def sample(self, rng: np.random.Generator, size=None, method: str = "component"):
        """Draw by picking a component by weight (default) or by inverse cdf."""
        if method == "inverse":
            return self.quantile(rng.random(size))
        if method != "component":
            raise ValueError(f"unknown sampling method {method!r}")
        if size is None:
            k = int(np.searchsorted(np.cumsum(self._w), rng.random() * np.sum(self._w), side="right"))
            k = min(k, len(self.components) - 1)
            return self.components[k].sample(rng)
        n = int(np.prod(size))
        ks = rng.choice(len(self.components), size=n, p=self._w)
        out = rng.beta(self._a[ks], self._b[ks])
        return out.reshape(size)


class PiecewiseReweighted(UnivariateDistribution):
    """Base density times ``left_factor`` below ``breakpoint`` and ``right_factor`` above.

    The factors must renormalize the density:
    ``left_factor * F(b) + right_factor * (1 - F(b)) = 1``.

    Internally the construction is held as the log-masses it places on each
    side of the breakpoint together with the base log-masses of both pieces,
    which keeps cdf and quantile exact even when a piece carries a
    probability too small to represent as a double.
    """

    def __init__(self, base: UnivariateDistribution, breakpoint: float, left_factor: float, right_factor: float):
        if not (left_factor > 0 and right_factor > 0):
            raise ValueError("reweighting factors must be positive")
        self._setup(base, breakpoint)
        total = left_factor * math.exp(self._log_below) + right_factor * math.exp(self._log_above)
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"factors do not renormalize the base density (total mass {total!r})")
        self._set_masses(math.log(left_factor) + self._log_below, math.log(right_factor) + self._log_above)

    @classmethod
    def from_log_masses(cls, base: UnivariateDistribution, breakpoint: float, log_left: float, log_right: float) -> "PiecewiseReweighted":
        """Reweight so that ``exp(log_left)`` lies below the breakpoint and ``exp(log_right)`` above."""
        if not (math.isfinite(log_left) and math.isfinite(log_right)):
            raise ValueError("both pieces need positive mass")
        if abs(np.logaddexp(log_left, log_right)) > 1e-12:
            raise ValueError("piece masses must sum to 1")
        self = cls.__new__(cls)
        self._setup(base, breakpoint)
        self._set_masses(log_left, log_right)
        return self

    @classmethod
    def from_left_mass(cls, base: UnivariateDistribution, breakpoint: float, left_mass: float) -> "PiecewiseReweighted":
        """Reweight so that exactly ``left_mass`` lies below the breakpoint."""
        if not 0.0 < left_mass < 1.0:
            raise ValueError(f"left_mass must lie in (0, 1), got {left_mass}")
        return cls.from_log_masses(base, breakpoint, math.log(left_mass), math.log1p(-left_mass))

    def _setup(self, base: UnivariateDistribution, breakpoint: float) -> None:
        if not 0.0 < breakpoint < 1.0:
            raise ValueError(f"breakpoint must lie in (0, 1), got {breakpoint}")
        self.base = base
        self.breakpoint = float(breakpoint)
        self.breakpoints = (self.breakpoint,)
        self._log_below = float(base.logcdf(self.breakpoint))
        self._log_above = float(base.logsf(self.breakpoint))
        if not (math.isfinite(self._log_below) and math.isfinite(self._log_above)):
            raise ValueError("breakpoint leaves one piece of the base distribution without mass")

    def _set_masses(self, log_left: float, log_right: float) -> None:
        self._log_left_mass = log_left
        self._log_right_mass = log_right
        self.left_mass = math.exp(log_left)
        self.right_mass = math.exp(log_right)
        self._log_left = log_left - self._log_below
        self._log_right = log_right - self._log_above

    @property
    def left_factor(self) -> float:
        return math.exp(self._log_left)

    @property
    def right_factor(self) -> float:
        return math.exp(self._log_right)

    def __repr__(self) -> str:
        return (
            f"PiecewiseReweighted(base={self.base!r}, breakpoint={self.breakpoint!r}, "
            f"left_factor={self.left_factor!r}, right_factor={self.right_factor!r})"
        )

    def logpdf(self, x):
        x = np.asarray(x, dtype=float)
        return _out(np.asarray(self.base.logpdf(x)) + np.where(x < self.breakpoint, self._log_left, self._log_right))

    def _pieces(self, x):
        b = self.breakpoint
        with np.errstate(over="ignore", under="ignore"):
            below = np.exp(self._log_left_mass + np.asarray(self.base.logcdf(np.minimum(x, b))) - self._log_below)
            above = np.exp(self._log_right_mass + np.asarray(self.base.logsf(np.maximum(x, b))) - self._log_above)
        return below, above

    def cdf(self, x):
        x = np.clip(np.asarray(x, dtype=float), 0.0, 1.0)
        below, above = self._pieces(x)
        return _out(np.where(x <= self.breakpoint, below, 1.0 - above))

    def sf(self, x):
        x = np.clip(np.asarray(x, dtype=float), 0.0, 1.0)
        below, above = self._pieces(x)
        return _out(np.where(x <= self.breakpoint, 1.0 - below, above))

    def quantile(self, u):
        u = np.asarray(u, dtype=float)
        left = u <= self.left_mass
        with np.errstate(divide="ignore", invalid="ignore"):
            log_lo = self._log_below + np.log(np.where(left, u, self.left_mass)) - self._log_left_mass
            log_hi = self._log_above + np.log(np.where(left, self.right_mass, 1.0 - u)) - self._log_right_mass
        out = np.where(
            left,
            np.asarray(self.base.quantile_from_logcdf(np.minimum(log_lo, 0.0)), dtype=float),
            np.asarray(self.base.quantile_from_logsf(np.minimum(log_hi, 0.0)), dtype=float),
        )
        out = np.where(u <= 0.0, 0.0, np.where(u >= 1.0, 1.0, out))
        return _out(out)

    def logcdf(self, x):
        x = np.clip(np.asarray(x, dtype=float), 0.0, 1.0)
        b = self.breakpoint
        with np.errstate(divide="ignore", over="ignore", under="ignore"):
            below = self._log_left_mass + np.asarray(self.base.logcdf(np.minimum(x, b))) - self._log_below
            above = self._log_right_mass + np.asarray(self.base.logsf(np.maximum(x, b))) - self._log_above
            out = np.where(x <= b, below, np.log(-np.expm1(np.minimum(above, 0.0))))
        return _out(out)

    def logsf(self, x):
        x = np.clip(np.asarray(x, dtype=float), 0.0, 1.0)
        b = self.breakpoint
        with np.errstate(divide="ignore", over="ignore", under="ignore"):
            below = self._log_left_mass + np.asarray(self.base.logcdf(np.minimum(x, b))) - self._log_below
            above = self._log_right_mass + np.asarray(self.base.logsf(np.maximum(x, b))) - self._log_above
            out = np.where(x <= b, np.log(-np.expm1(np.minimum(below, 0.0))), above)
        return _out(out)

    def quantile_from_logcdf(self, logu):
        logu = np.asarray(logu, dtype=float)
        left = logu <= self._log_left_mass
        with np.errstate(divide="ignore", invalid="ignore"):
            log_lo = self._log_below + np.where(left, logu, self._log_left_mass) - self._log_left_mass
            logs = np.log(-np.expm1(np.where(left, self._log_left_mass, logu)))
            log_hi = self._log_above + np.where(left, self._log_right_mass, logs) - self._log_right_mass
        out = np.where(
            left,
            np.asarray(self.base.quantile_from_logcdf(np.minimum(log_lo, 0.0)), dtype=float),
            np.asarray(self.base.quantile_from_logsf(np.minimum(log_hi, 0.0)), dtype=float),
        )
        return _out(out)

    def quantile_from_logsf(self, logs):
        logs = np.asarray(logs, dtype=float)
        right = logs <= self._log_right_mass
        with np.errstate(divide="ignore", invalid="ignore"):
            log_hi = self._log_above + np.where(right, logs, self._log_right_mass) - self._log_right_mass
            logu = np.log(-np.expm1(np.where(right, self._log_right_mass, logs)))
            log_lo = self._log_below + np.where(right, self._log_left_mass, logu) - self._log_left_mass
        out = np.where(
            right,
            np.asarray(self.base.quantile_from_logsf(np.minimum(log_hi, 0.0)), dtype=float),
            np.asarray(self.base.quantile_from_logcdf(np.minimum(log_lo, 0.0)), dtype=float),
        )
        return _out(out)

    def landmarks(self) -> np.ndarray:
        return np.unique(np.concatenate([self.base.landmarks(), [self.breakpoint]]))

    def mirror(self) -> "PiecewiseReweighted":
        return PiecewiseReweighted.from_log_masses(
            self.base.mirror(), 1.0 - self.breakpoint, self._log_right_mass, self._log_left_mass
        )

    def sample(self, rng: np.random.Generator, size=None):
        return self.quantile(rng.random(size))


# ---------------------------------------------------------------------------
# Functional surface
# ---------------------------------------------------------------------------

def beta_pdf(p: Beta, x: float) -> float:
    """Beta density; an unbounded endpoint reports ``PDF_SATURATION``."""
    if is_endpoint_singular(p, x):
        return PDF_SATURATION
    return float(p.pdf(x))


def is_endpoint_singular(p: Beta, x: float) -> bool:
    return (x == 0.0 and p.a < 1.0) or (x == 1.0 and p.b < 1.0)


def beta_cdf(p: Beta, x: float) -> float:
    return float(p.cdf(x))


def beta_quantile(p: Beta, u: float) -> float:
    return float(p.quantile(u))


def dist_pdf(d: UnivariateDistribution, x):
    return d.pdf(x)


def dist_cdf(d: UnivariateDistribution, x):
    return d.cdf(x)


def dist_quantile(d: UnivariateDistribution, u):
    return d.quantile(u)


def sample(d: UnivariateDistribution, rng: np.random.Generator, size=None):
    return d.sample(rng, size)


def make_piecewise_left_boost(base: UnivariateDistribution, b: float, r: float) -> PiecewiseReweighted:
    """Scale the mass above ``b`` down by ``1/r`` and move it below ``b``."""
    if not r > 1.0:
        raise ValueError(f"r must exceed 1, got {r}")
    if not 0.0 < b < 1.0:
        raise ValueError(f"breakpoint must lie in (0, 1), got {b}")
    log_right = float(base.logsf(b)) - math.log(r)
    return PiecewiseReweighted.from_log_masses(base, b, math.log1p(-math.exp(log_right)), log_right)


def make_piecewise_right_boost(base: UnivariateDistribution, b: float, r: float) -> PiecewiseReweighted:
    """Scale the mass below ``b`` down by ``1/r`` and move it above ``b``."""
    if not r > 1.0:
        raise ValueError(f"r must exceed 1, got {r}")
    if not 0.0 < b < 1.0:
        raise ValueError(f"breakpoint must lie in (0, 1), got {b}")
    log_left = float(base.logcdf(b)) - math.log(r)
    return PiecewiseReweighted.from_log_masses(base, b, log_left, math.log1p(-math.exp(log_left)))


def mixture(weights: Sequence[float], components: Sequence[Beta]) -> BetaMixture:
    return BetaMixture(tuple(weights), tuple(components))
