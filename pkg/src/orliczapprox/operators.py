"""Linear summation methods of Fourier series as diagonal multipliers.

Every method acts on a spectrum by ``c_k -> m(|k|) c_k``:

    Fourier(n)              1 for |k| <= n, else 0
    Zygmund(n, s)           1 - (|k|/(n+1))**s for |k| <= n, else 0
    Fejer(n)                Zygmund(n, 1)
    AbelPoisson(rho, s)     rho**(|k|**s)
    TaylorAbelPoisson(rho, r)  lambda_{|k|,r}(rho)
    PoissonIntegral(rho)    rho**|k|
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np
from scipy.special import gammaln

from .spectrum import CoeffSeq

__all__ = [
    "EXACT_BINOM_MAX",
    "binom",
    "binomial_terms",
    "lambda_kr",
    "lambda_kr_array",
    "falling_factorial",
    "OperatorSpec",
    "Fourier",
    "Zygmund",
    "Fejer",
    "AbelPoisson",
    "TaylorAbelPoisson",
    "PoissonIntegral",
    "multiplier",
    "apply",
    "operator_from_json",
    "poisson_kernel",
    "poisson_radial_derivative",
]

# exact integer binomials up to this order, log-gamma above
EXACT_BINOM_MAX = 60


def binom(nu: int, j: int) -> float:
    if j < 0 or j > nu:
        return 0.0
    if nu <= EXACT_BINOM_MAX:
        return float(math.comb(nu, j))
    return math.exp(math.lgamma(nu + 1) - math.lgamma(j + 1) - math.lgamma(nu - j + 1))


def binomial_terms(nu: int, rho: float) -> np.ndarray:
    """The Bernstein weights C(nu, j) (1-rho)^j rho^(nu-j), j = 0..nu.

    Uses the convention 0**0 = 1.
    """
    if nu < 0:
        raise ValueError("nu must be nonnegative")
    x = 1.0 - rho
    if nu <= EXACT_BINOM_MAX:
        return np.array([math.comb(nu, j) * x ** j * rho ** (nu - j) for j in range(nu + 1)])
    j = np.arange(nu + 1)
    out = np.zeros(nu + 1)
    if rho == 0.0:
        out[nu] = 1.0
        return out
    if rho == 1.0:
        out[0] = 1.0
        return out
    logc = gammaln(nu + 1) - gammaln(j + 1) - gammaln(nu - j + 1)
    return np.exp(logc + j * math.log(x) + (nu - j) * math.log(rho))


def lambda_kr(k: int, r: int, rho: float) -> float:
    """lambda_{k,r}(rho): 1 for k < r, else sum_{j<r} C(k,j)(1-rho)^j rho^(k-j)."""
    if r < 1:
        raise ValueError("r must be a positive integer")
    if not 0.0 <= rho <= 1.0:
        raise ValueError("rho must lie in [0, 1]")
    return float(lambda_kr_array(np.array([abs(int(k))]), r, rho)[0])


def _binom_column(kk: np.ndarray, j: int) -> np.ndarray:
    small = kk <= EXACT_BINOM_MAX
    out = np.empty(kk.shape)
    out[small] = [float(math.comb(int(k), j)) for k in kk[small]]
    kb = kk[~small].astype(float)
    logc = np.zeros(kb.shape)
    for i in range(j):
        logc += np.log((kb - i) / (i + 1))
    out[~small] = np.exp(logc)
    return out


def lambda_kr_array(kabs: np.ndarray, r: int, rho: float) -> np.ndarray:
    """Vectorized lambda_{|k|,r}(rho) over an array of |k| (0**0 = 1)."""
    kabs = np.abs(np.asarray(kabs, dtype=np.int64))
    out = np.ones(kabs.shape, dtype=float)
    sel = kabs >= r
    if not sel.any():
        return out
    kk = kabs[sel]
    x = 1.0 - rho
    acc = np.zeros(kk.shape)
    for j in range(r):
        acc += _binom_column(kk, j) * x ** j * np.power(rho, (kk - j).astype(float))
    out[sel] = acc
    return out


def falling_factorial(kabs: np.ndarray, r: int) -> np.ndarray:
    """|k|!/(|k|-r)! for |k| >= r, 0 otherwise."""
    kabs = np.abs(np.asarray(kabs, dtype=float))
    out = np.ones(kabs.shape)
    for i in range(r):
        out *= kabs - i
    return np.where(kabs >= r, out, 0.0)


@dataclass(frozen=True)
class OperatorSpec:
    def multipliers(self, kabs: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def __call__(self, c: CoeffSeq) -> CoeffSeq:
        return apply(self, c)

    def to_json(self) -> dict:
        raise NotImplementedError


def _check_rho_open(rho):
    if not 0.0 <= rho < 1.0:
        raise ValueError(f"rho must lie in [0, 1), got {rho}")


@dataclass(frozen=True)
class Fourier(OperatorSpec):
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be nonnegative")

    def multipliers(self, kabs):
        return (np.abs(kabs) <= self.n).astype(float)

    def to_json(self):
        return {"op": "fourier", "n": self.n}


@dataclass(frozen=True)
class Zygmund(OperatorSpec):
    n: int
    s: float

    def __post_init__(self):
        if self.n < 0 or self.s <= 0:
            raise ValueError("Zygmund sums need n >= 0 and s > 0")

    def multipliers(self, kabs):
        kabs = np.abs(np.asarray(kabs, dtype=float))
        inside = kabs <= self.n
        return np.where(inside, 1.0 - (kabs / (self.n + 1)) ** self.s, 0.0)

    def to_json(self):
        return {"op": "zygmund", "n": self.n, "s": self.s}


@dataclass(frozen=True)
class Fejer(Zygmund):
    s: float = 1.0

    def __post_init__(self):
        if self.s != 1.0:
            raise ValueError("the Fejer sum is the Zygmund sum with s = 1")
        super().__post_init__()

    def to_json(self):
        return {"op": "fejer", "n": self.n}


@dataclass(frozen=True)
class AbelPoisson(OperatorSpec):
    rho: float
    s: float = 1.0

    def __post_init__(self):
        _check_rho_open(self.rho)
        if self.s <= 0:
            raise ValueError("s must be positive")

    def multipliers(self, kabs):
        e = np.abs(np.asarray(kabs, dtype=float)) ** self.s
        return np.power(self.rho, e)

    def to_json(self):
        return {"op": "abel_poisson", "rho": self.rho, "s": self.s}


@dataclass(frozen=True)
class TaylorAbelPoisson(OperatorSpec):
    rho: float
    r: int

    def __post_init__(self):
        if not 0.0 <= self.rho <= 1.0:
            raise ValueError(f"rho must lie in [0, 1], got {self.rho}")
        if int(self.r) != self.r or self.r < 1:
            raise ValueError("r must be a positive integer")

    def multipliers(self, kabs):
        return lambda_kr_array(kabs, int(self.r), self.rho)

    def to_json(self):
        return {"op": "tap", "rho": self.rho, "r": int(self.r)}


@dataclass(frozen=True)
class PoissonIntegral(OperatorSpec):
    rho: float

    def __post_init__(self):
        _check_rho_open(self.rho)

    def multipliers(self, kabs):
        return np.power(self.rho, np.abs(np.asarray(kabs, dtype=float)))

    def to_json(self):
        return {"op": "poisson", "rho": self.rho}


def multiplier(spec: OperatorSpec, k: int) -> float:
    return float(spec.multipliers(np.array([abs(int(k))]))[0])


def apply(spec: OperatorSpec, c: CoeffSeq) -> CoeffSeq:
    return c.map_multiplier(spec.multipliers)


def operator_from_json(obj: Mapping) -> OperatorSpec:
    op = obj["op"]
    if op == "fourier":
        return Fourier(int(obj["n"]))
    if op == "zygmund":
        return Zygmund(int(obj["n"]), float(obj["s"]))
    if op == "fejer":
        return Fejer(int(obj["n"]))
    if op == "abel_poisson":
        return AbelPoisson(float(obj["rho"]), float(obj.get("s", 1.0)))
    if op == "tap":
        return TaylorAbelPoisson(float(obj["rho"]), int(obj["r"]))
    if op == "poisson":
        return PoissonIntegral(float(obj["rho"]))
    raise ValueError(f"unknown operator {op!r}")


def poisson_kernel(rho: float, t):
    """(1 - rho^2) / |1 - rho e^{it}|^2."""
    if not 0.0 <= rho < 1.0:
        raise ValueError("the Poisson kernel needs 0 <= rho < 1")
    t = np.asarray(t, dtype=float)
    out = (1.0 - rho * rho) / (1.0 - 2.0 * rho * np.cos(t) + rho * rho)
    return float(out) if out.ndim == 0 else out


def poisson_radial_derivative(c: CoeffSeq, rho: float, r: int) -> CoeffSeq:
    """Spectrum of P(f^[r])(rho, .) = rho^r d^r/drho^r P(f)(rho, .)."""
    _check_rho_open(rho)
    if r < 1:
        raise ValueError("r must be a positive integer")
    return c.map_multiplier(lambda k: falling_factorial(k, r) * np.power(rho, k.astype(float)))
