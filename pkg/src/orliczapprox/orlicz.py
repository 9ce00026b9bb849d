"""Orlicz functions and the Luxemburg norm on coefficient sequences.

The norm of a sequence ``c`` is

    ||c||_M = inf{a > 0 : sum_k M(|c_k| / a) <= 1}

and is computed by bisection on ``a``.  The function ``a -> sum_k M(|c_k|/a)``
is nonincreasing, and convexity of ``M`` with ``M(0) = 0`` gives the bracket

    max|c_k| / M^{-1}(1)  <=  ||c||_M  <=  sum|c_k| / M^{-1}(1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

import numpy as np
from scipy.optimize import brentq

__all__ = [
    "OrliczFunction",
    "OrliczContractError",
    "NormValue",
    "ValidationReport",
    "eval_orlicz",
    "validate_orlicz",
    "luxemburg_norm",
    "luxemburg_norms",
    "DEFAULT_TOL",
]

DEFAULT_TOL = 1e-12
FAMILIES = ("power", "power_log", "exp_minus_one", "table")
_MAX_BISECT = 400


class OrliczContractError(ValueError):
    """Raised when a norm is requested for an M that fails validation."""


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[str, ...] = ()
    witnesses: tuple[tuple[float, ...], ...] = ()

    def to_json(self) -> dict:
        return {"ok": self.ok, "violations": list(self.violations),
                "witnesses": [list(w) for w in self.witnesses]}


@dataclass(frozen=True, eq=False)
class OrliczFunction:
    """A gauge ``M`` from one of the closed-form families, or a table.

    ``power``          M(t) = t**p,                 p >= 1
    ``power_log``      M(t) = t**p * log1p(t)**q,   p >= 1, q >= 0
    ``exp_minus_one``  M(t) = exp(t) - 1
    ``table``          piecewise-linear through ``points`` (t_i, M_i), with
                       the last slope continued beyond the final knot.
    """

    family: str
    params: Mapping[str, float] = field(default_factory=dict)
    points: tuple[tuple[float, float], ...] = ()

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown Orlicz family {self.family!r}")
        object.__setattr__(self, "params", dict(self.params))
        p = self.params
        if self.family == "power":
            if p.get("p", 0) < 1:
                raise ValueError("power family needs p >= 1")
        elif self.family == "power_log":
            if p.get("p", 0) < 1 or p.get("q", -1) < 0:
                raise ValueError("power_log family needs p >= 1, q >= 0")
        elif self.family == "table":
            pts = tuple((float(t), float(m)) for t, m in self.points)
            if len(pts) < 2:
                raise ValueError("table needs at least two knots")
            ts = [t for t, _ in pts]
            if ts[0] != 0.0 or any(b <= a for a, b in zip(ts, ts[1:])):
                raise ValueError("table knots must start at t=0 and increase")
            object.__setattr__(self, "points", pts)

    @classmethod
    def power(cls, p: float) -> "OrliczFunction":
        return cls("power", {"p": float(p)})

    @classmethod
    def power_log(cls, p: float, q: float) -> "OrliczFunction":
        return cls("power_log", {"p": float(p), "q": float(q)})

    @classmethod
    def exp_minus_one(cls) -> "OrliczFunction":
        return cls("exp_minus_one", {})

    @classmethod
    def table(cls, points) -> "OrliczFunction":
        return cls("table", {}, tuple(points))

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        fam = self.family
        if fam == "power":
            return t ** self.params["p"]
        if fam == "power_log":
            q = self.params["q"]
            out = t ** self.params["p"]
            return out * np.log1p(t) ** q if q else out
        if fam == "exp_minus_one":
            with np.errstate(over="ignore"):
                return np.expm1(t)
        ts, ms = self._knots
        out = np.interp(t, ts, ms)
        slope = (ms[-1] - ms[-2]) / (ts[-1] - ts[-2])
        return np.where(t > ts[-1], ms[-1] + slope * (t - ts[-1]), out)

    @cached_property
    def _knots(self):
        arr = np.array(self.points, dtype=float)
        return arr[:, 0], arr[:, 1]

    @cached_property
    def inverse_at_one(self) -> float:
        """The unique t with M(t) = 1."""
        fam = self.family
        if fam == "power":
            return 1.0
        if fam == "exp_minus_one":
            return math.log(2.0)
        hi = 1.0
        while float(self(hi)) < 1.0:
            hi *= 2.0
            if hi > 1e300:
                raise OrliczContractError("M never reaches 1")
        return brentq(lambda t: float(self(t)) - 1.0, 0.0, hi, xtol=1e-15, rtol=1e-15)

    @cached_property
    def validation(self) -> ValidationReport:
        return validate_orlicz(self)

    def require_valid(self) -> None:
        if self.family != "table":
            return  # parameter ranges already checked in __post_init__
        rep = self.validation
        if not rep.ok:
            raise OrliczContractError("Orlicz function failed validation: "
                                      + "; ".join(rep.violations))

    def to_json(self) -> dict:
        out = {"family": self.family, "params": dict(self.params)}
        if self.family == "table":
            out["points"] = [list(p) for p in self.points]
        return out

    @classmethod
    def from_json(cls, obj: Mapping) -> "OrliczFunction":
        return cls(obj["family"], obj.get("params", {}),
                   tuple(map(tuple, obj.get("points", ()))))

    def __eq__(self, other):
        if not isinstance(other, OrliczFunction):
            return NotImplemented
        return self.to_json() == other.to_json()

    def __hash__(self):
        return hash((self.family, tuple(sorted(self.params.items())), self.points))

    def __repr__(self):
        args = ", ".join(f"{k}={v:g}" for k, v in self.params.items())
        return f"OrliczFunction({self.family}{', ' + args if args else ''})"


def eval_orlicz(M: OrliczFunction, t: float) -> float:
    if t < 0:
        raise ValueError(f"Orlicz functions are defined for t >= 0, got {t}")
    if t == 0:
        return 0.0
    return float(M(t))


def validate_orlicz(M: OrliczFunction, grid_size: int = 100, T_max: float = 10.0,
                    tol: float = 1e-12) -> ValidationReport:
    """Check M(0)=0, monotonicity, midpoint convexity and M(T_max) > 1 on a
    uniform grid.  Violations are reported, never raised."""
    if grid_size < 3 or T_max <= 0:
        raise ValueError("need grid_size >= 3 and T_max > 0")
    t = np.linspace(0.0, T_max, grid_size)
    with np.errstate(all="ignore"):
        m = np.asarray(M(t), dtype=float)
    violations, witnesses = [], []
    if m[0] != 0.0:
        violations.append(f"M(0) = {m[0]!r} != 0")
        witnesses.append((0.0, float(m[0])))
    bad = np.nonzero(m[1:] < m[:-1])[0]
    if bad.size:
        i = int(bad[0])
        violations.append(f"not nondecreasing between t={t[i]:g} and t={t[i + 1]:g}")
        witnesses.append((float(t[i]), float(t[i + 1])))
    # midpoint of t_i, t_j is a grid point whenever i + j is even
    i, j = np.triu_indices(grid_size, k=2)
    even = (i + j) % 2 == 0
    i, j = i[even], j[even]
    mid = (i + j) // 2
    slack = tol * np.maximum(1.0, np.abs(m[i]) + np.abs(m[j]))
    gap = m[mid] - 0.5 * (m[i] + m[j]) - slack
    if np.any(gap > 0):
        w = int(np.argmax(gap))
        violations.append(
            f"not midpoint-convex at t={t[i[w]]:g}, {t[mid[w]]:g}, {t[j[w]]:g}")
        witnesses.append((float(t[i[w]]), float(t[mid[w]]), float(t[j[w]])))
    if not m[-1] > 1.0:
        violations.append(f"M(T_max={T_max:g}) = {m[-1]:g} does not exceed 1")
        witnesses.append((float(T_max), float(m[-1])))
    return ValidationReport(not violations, tuple(violations), tuple(witnesses))


@dataclass(frozen=True)
class NormValue:
    """A Luxemburg norm with its final bisection bracket ``lo <= value <= hi``."""

    value: float
    lo: float
    hi: float

    def __float__(self):
        return self.value


def _modulus(c) -> np.ndarray:
    amps = getattr(c, "amplitudes", c)
    return np.abs(np.asarray(amps))


def luxemburg_norm(M: OrliczFunction, c, tol: float = DEFAULT_TOL) -> NormValue:
    """Luxemburg norm of a :class:`~orliczapprox.spectrum.CoeffSeq` (or of a
    plain array of amplitudes)."""
    a = _modulus(c).ravel()
    vals, lo, hi = _bisect(M, a[None, :], tol)
    return NormValue(float(vals[0]), float(lo[0]), float(hi[0]))


def luxemburg_norms(M: OrliczFunction, amplitudes, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Row-wise norms of a 2-D array of amplitudes; rows may be zero-padded."""
    a = np.abs(np.asarray(amplitudes))
    if a.ndim != 2:
        raise ValueError("expected a 2-D array of amplitudes")
    return _bisect(M, a, tol)[0]


def _phi(M, a, scale):
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        return np.sum(M(a / scale[:, None]), axis=1)


def _bisect(M, a, tol):
    M.require_valid()
    rows = a.shape[0]
    vals = np.zeros(rows)
    lo_out = np.zeros(rows)
    hi_out = np.zeros(rows)
    if a.shape[1] == 0:
        return vals, lo_out, hi_out
    amax = a.max(axis=1)
    live = np.nonzero(amax > 0)[0]
    if live.size == 0:
        return vals, lo_out, hi_out
    a = a[live]
    t1 = M.inverse_at_one
    lo = amax[live] / t1
    hi = a.sum(axis=1) / t1

    # convexity guarantees phi(hi) <= 1; tables only approximately convex
    for _ in range(200):
        over = _phi(M, a, hi) > 1.0
        if not over.any():
            break
        hi = np.where(over, 2.0 * hi, hi)
    # phi(lo) <= 1 means lo itself attains the infimum
    exact = _phi(M, a, lo) <= 1.0
    hi = np.where(exact, lo, hi)

    for _ in range(_MAX_BISECT):
        width = hi - lo
        todo = width > np.maximum(tol, 4 * np.finfo(float).eps * hi)
        if not todo.any():
            break
        idx = np.nonzero(todo)[0]
        mid = 0.5 * (lo[idx] + hi[idx])
        ok = _phi(M, a[idx], mid) <= 1.0
        hi[idx[ok]] = mid[ok]
        lo[idx[~ok]] = mid[~ok]
    vals[live] = 0.5 * (lo + hi)
    lo_out[live] = lo
    hi_out[live] = hi
    return vals, lo_out, hi_out
