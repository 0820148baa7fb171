"""One-dimensional marginal distributions used by every sampler.

Each marginal exposes a quantile function, a CDF and its support
``(lower, upper)``.  Unbounded ends are reported as ``-inf`` / ``inf``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import erfc

__all__ = [
    "Distribution",
    "uniform",
    "normal",
    "truncated_normal",
    "normal_ppf",
    "normal_cdf",
    "KINDS",
]

KINDS = ("uniform", "normal", "truncnorm")

_SQRT2 = math.sqrt(2.0)
_SQRT2PI = math.sqrt(2.0 * math.pi)

# Acklam's rational approximation to the standard normal quantile.
_A = (-3.969683028665376e01, 2.209460984245205e02, -2.759285104469687e02,
      1.383577518672690e02, -3.066479806614716e01, 2.506628277459239e00)
_B = (-5.447609879822406e01, 1.615858368580409e02, -1.556989798598866e02,
      6.680131188771972e01, -1.328068155288572e01)
_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e00,
      -2.549732539343734e00, 4.374664141464968e00, 2.938163982698783e00)
_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e00,
      3.754408661907416e00)
_P_LOW = 0.02425


def normal_cdf(z):
    """Standard normal CDF, vectorised."""
    return 0.5 * erfc(-np.asarray(z, dtype=float) / _SQRT2)


def _normal_sf(z):
    return 0.5 * erfc(np.asarray(z, dtype=float) / _SQRT2)


def _acklam(p: np.ndarray) -> np.ndarray:
    x = np.empty_like(p)
    lo = p < _P_LOW
    hi = p > 1.0 - _P_LOW
    mid = ~(lo | hi)

    q = p[mid] - 0.5
    r = q * q
    num = ((((_A[0] * r + _A[1]) * r + _A[2]) * r + _A[3]) * r + _A[4]) * r + _A[5]
    den = ((((_B[0] * r + _B[1]) * r + _B[2]) * r + _B[3]) * r + _B[4]) * r + 1.0
    x[mid] = num * q / den

    for mask, tail, sign in ((lo, p[lo], 1.0), (hi, 1.0 - p[hi], -1.0)):
        if not mask.any():
            continue
        q = np.sqrt(-2.0 * np.log(tail))
        num = ((((_C[0] * q + _C[1]) * q + _C[2]) * q + _C[3]) * q + _C[4]) * q + _C[5]
        den = (((_D[0] * q + _D[1]) * q + _D[2]) * q + _D[3]) * q + 1.0
        x[mask] = sign * num / den
    return x


def normal_ppf(p):
    """Standard normal quantile.

    Rational approximation (relative error about 1e-9) followed by one
    Newton step on the erfc-based CDF.  The lower half is refined against
    the CDF and the upper half against the survival function so that both
    tails keep their relative precision.
    """
    p = np.asarray(p, dtype=float)
    if np.any((p <= 0.0) | (p >= 1.0) | np.isnan(p)):
        raise ValueError("probability must lie in the open interval (0, 1)")
    scalar = p.ndim == 0
    p = np.atleast_1d(p)
    x = _acklam(p)

    density = np.exp(-0.5 * x * x) / _SQRT2PI
    upper = p > 0.5
    err = np.where(upper, (1.0 - p) - _normal_sf(x), normal_cdf(x) - p)
    x = x - err / density
    return x[0] if scalar else x


@dataclass(frozen=True)
class Distribution:
    """A continuous marginal with invertible CDF.

    Parameters
    ----------
    kind : {"uniform", "normal", "truncnorm"}
    params : tuple of float
        ``(lower, upper)`` for uniform, ``(mean, sd)`` for normal and
        ``(mean, sd, lower, upper)`` for the truncated normal.
    name : str
        Identifier of the variable carrying this marginal.
    """

    kind: str
    params: tuple
    name: str = ""
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown distribution kind {self.kind!r}; expected one of {KINDS}")
        params = tuple(float(v) for v in self.params)
        object.__setattr__(self, "params", params)
        expected = {"uniform": 2, "normal": 2, "truncnorm": 4}[self.kind]
        if len(params) != expected:
            raise ValueError(f"{self.kind} takes {expected} parameters, got {len(params)}")
        if not all(math.isfinite(v) for v in params):
            raise ValueError("distribution parameters must be finite")
        if self.kind == "uniform":
            lo, hi = params
            if not lo < hi:
                raise ValueError(f"uniform bounds must satisfy min < max, got [{lo}, {hi}]")
        else:
            if params[1] <= 0:
                raise ValueError(f"standard deviation must be positive, got {params[1]}")
            if self.kind == "truncnorm":
                lo, hi = params[2:]
                if not lo < hi:
                    raise ValueError(f"truncation bounds must satisfy min < max, got [{lo}, {hi}]")
                mu, sd = params[:2]
                alpha, beta = (lo - mu) / sd, (hi - mu) / sd
                # Reflect into the lower tail when the window sits above the mean.
                flip = alpha > 0
                if flip:
                    alpha, beta = -beta, -alpha
                c_lo, c_hi = float(normal_cdf(alpha)), float(normal_cdf(beta))
                if not c_hi > c_lo:
                    raise ValueError("truncation window carries no probability mass")
                self._cache.update(alpha=alpha, beta=beta, c_lo=c_lo, c_hi=c_hi, flip=flip)

    @property
    def lower(self) -> float:
        return self.support()[0]

    @property
    def upper(self) -> float:
        return self.support()[1]

    @property
    def bounded(self) -> bool:
        lo, hi = self.support()
        return math.isfinite(lo) and math.isfinite(hi)

    def support(self) -> tuple[float, float]:
        if self.kind == "uniform":
            return self.params
        if self.kind == "normal":
            return (-math.inf, math.inf)
        return self.params[2], self.params[3]

    def quantile(self, u):
        """Inverse CDF; ``u`` must lie strictly inside (0, 1)."""
        u = np.asarray(u, dtype=float)
        if np.any((u <= 0.0) | (u >= 1.0) | np.isnan(u)):
            raise ValueError("quantile argument must lie in the open interval (0, 1)")
        if self.kind == "uniform":
            lo, hi = self.params
            x = lo + u * (hi - lo)
            # lo + u*(hi-lo) can round onto an endpoint for tiny/huge u
            return np.clip(x, np.nextafter(lo, hi), np.nextafter(hi, lo))
        mu, sd = self.params[:2]
        if self.kind == "normal":
            return mu + sd * normal_ppf(u)
        c = self._cache
        if c["flip"]:
            u = 1.0 - u
        z = normal_ppf(c["c_lo"] + u * (c["c_hi"] - c["c_lo"]))
        z = np.clip(z, c["alpha"], c["beta"])
        if c["flip"]:
            z = -z
        lo, hi = self.params[2:]
        return np.clip(mu + sd * z, np.nextafter(lo, hi), np.nextafter(hi, lo))

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        if self.kind == "uniform":
            lo, hi = self.params
            return np.clip((x - lo) / (hi - lo), 0.0, 1.0)
        mu, sd = self.params[:2]
        z = (x - mu) / sd
        if self.kind == "normal":
            return normal_cdf(z)
        c = self._cache
        if c["flip"]:
            out = (c["c_hi"] - normal_cdf(-z)) / (c["c_hi"] - c["c_lo"])
        else:
            out = (normal_cdf(z) - c["c_lo"]) / (c["c_hi"] - c["c_lo"])
        return np.clip(out, 0.0, 1.0)

    def to_dict(self) -> dict:
        out = {"name": self.name, "dist": self.kind}
        if self.kind == "uniform":
            out.update(min=self.params[0], max=self.params[1])
        elif self.kind == "normal":
            out.update(mean=self.params[0], sd=self.params[1])
        else:
            out.update(mean=self.params[0], sd=self.params[1],
                       min=self.params[2], max=self.params[3])
        return out


def uniform(lower: float, upper: float, name: str = "") -> Distribution:
    return Distribution("uniform", (lower, upper), name)


def normal(mean: float = 0.0, sd: float = 1.0, name: str = "") -> Distribution:
    return Distribution("normal", (mean, sd), name)


def truncated_normal(mean: float, sd: float, lower: float, upper: float,
                     name: str = "") -> Distribution:
    return Distribution("truncnorm", (mean, sd, lower, upper), name)
