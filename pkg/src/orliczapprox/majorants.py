"""Majorants ω on [0, 1], the Zygmund-Bari-Stechkin conditions, and the
ratio-trend harness that turns O(.) statements into auditable evidence.

An O(g) claim is judged on a finite sequence of points (x_i, y_i) ordered
toward the limit.  The ratios y_i/g(x_i) are inspected on the last quartile
of the parameter range, measured on a log scale; the claim is reported
``bounded`` when no ratio there exceeds the first one of the quartile by more
than ``slack``.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np
from scipy import integrate, special

__all__ = [
    "Majorant",
    "RateReport",
    "MajorantConditionError",
    "BOUNDED",
    "UNBOUNDED",
    "INCONCLUSIVE",
    "rate_fit",
    "check_B",
    "check_Bs",
    "remark1_check",
    "validate_majorant",
]

BOUNDED = "bounded"
UNBOUNDED = "unbounded-trend"
INCONCLUSIVE = "inconclusive"
DEFAULT_SLACK = 0.1


class MajorantConditionError(ValueError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True, eq=False)
class Majorant:
    """ω(t) on [0, 1]: ``power`` t^β, ``power_log`` t^β (ln(e/t))^γ, or a
    ``table`` of knots (t, w) interpolated linearly in log-log coordinates."""

    family: str
    beta: float = 0.0
    gamma: float = 0.0
    table: tuple[tuple[float, float], ...] = ()

    def __post_init__(self):
        if self.family in ("power", "power_log"):
            if self.beta <= 0:
                raise ValueError(f"{self.family} majorant needs beta > 0")
        elif self.family == "table":
            pts = sorted((float(t), float(w)) for t, w in self.table if t > 0)
            if len(pts) < 2:
                raise ValueError("table majorant needs at least two knots with t > 0")
            if any(w <= 0 for _, w in pts):
                raise ValueError("table majorant values must be positive for t > 0")
            if pts[-1][0] > 1.0:
                raise ValueError("table majorant is defined on [0, 1]")
            object.__setattr__(self, "table", tuple(pts))
        else:
            raise ValueError(f"unknown majorant family {self.family!r}")

    @classmethod
    def power(cls, beta: float) -> "Majorant":
        return cls("power", float(beta))

    @classmethod
    def power_log(cls, beta: float, gamma: float) -> "Majorant":
        return cls("power_log", float(beta), float(gamma))

    @classmethod
    def from_table(cls, table) -> "Majorant":
        return cls("table", table=tuple(map(tuple, table)))

    @classmethod
    def from_callable(cls, fn: Callable[[np.ndarray], np.ndarray], t_min: float,
                      knots: int = 400) -> "Majorant":
        t = np.logspace(math.log10(t_min), 0.0, knots)
        return cls.from_table(list(zip(t.tolist(), np.asarray(fn(t), float).tolist())))

    @property
    def t_min(self) -> float:
        return self.table[0][0] if self.family == "table" else 0.0

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            if self.family == "power":
                out = t ** self.beta
            elif self.family == "power_log":
                out = t ** self.beta * np.log(math.e / t) ** self.gamma
                out = np.where(t > 0, out, 0.0)
            else:
                lt, lw = self._loglog
                out = np.exp(np.interp(np.log(t), lt, lw, left=np.nan))
                # continue the first segment's power law below the table
                p0 = (lw[1] - lw[0]) / (lt[1] - lt[0])
                below = np.exp(lw[0] + p0 * (np.log(t) - lt[0]))
                out = np.where(t < self.table[0][0], below, out)
                out = np.where(t > 0, out, 0.0)
        return float(out) if out.ndim == 0 else out

    @property
    def _loglog(self):
        arr = np.log(np.array(self.table))
        return arr[:, 0], arr[:, 1]

    def loglog_integral(self, a: float, b: float) -> float:
        """∫_a^b ω(t)/t dt for a table, exact for the log-log interpolant,
        restricted to the tabulated range."""
        lt, lw = self._loglog
        a, b = max(a, self.table[0][0]), min(b, self.table[-1][0])
        if b <= a:
            return 0.0
        la, lb = math.log(a), math.log(b)
        total = 0.0
        for i in range(len(lt) - 1):
            lo, hi = max(lt[i], la), min(lt[i + 1], lb)
            if hi <= lo:
                continue
            p = (lw[i + 1] - lw[i]) / (lt[i + 1] - lt[i])
            w_lo = math.exp(lw[i] + p * (lo - lt[i]))
            seg = hi - lo
            total += w_lo * seg if abs(p * seg) < 1e-12 else w_lo * math.expm1(p * seg) / p
        return total

    def label(self) -> str:
        if self.family == "power":
            return f"t^{self.beta:g}"
        if self.family == "power_log":
            return f"t^{self.beta:g} ln(e/t)^{self.gamma:g}"
        return f"table[{len(self.table)}]"

    def to_json(self) -> dict:
        if self.family == "power":
            return {"family": "power", "beta": self.beta}
        if self.family == "power_log":
            return {"family": "power_log", "beta": self.beta, "gamma": self.gamma}
        return {"family": "table", "table": [list(p) for p in self.table]}

    @classmethod
    def from_json(cls, obj: Mapping) -> "Majorant":
        fam = obj["family"]
        if fam == "table":
            return cls.from_table(obj["table"])
        return cls(fam, float(obj.get("beta", 0.0)), float(obj.get("gamma", 0.0)))


def validate_majorant(w: Majorant, grid: int = 2000, jump_tol: float = 0.05) -> list[str]:
    """Conditions 1)-4) on a log grid of (0, 1]; returns the violations."""
    t = np.concatenate([[0.0], np.logspace(-6, 0, grid)])
    v = np.asarray(w(t))
    bad = []
    if np.any(np.abs(np.diff(v[1:])) > jump_tol * v[-1]):
        bad.append("1) jump larger than the grid-adjacent tolerance")
    if np.any(np.diff(v) < 0):
        bad.append("2) not nondecreasing")
    if np.any(v[1:] <= 0):
        bad.append("3) vanishes somewhere in (0, 1]")
    if not v[1] < 1e-3 * v[-1]:
        bad.append(f"4) ω(1e-6) = {v[1]:.3g} is not below 1e-3·ω(1)")
    return bad


@dataclass
class RateReport:
    points: list[tuple[float, float]]
    g_label: str
    g_values: list[float]
    ratios: list[float]
    sup_ratio: float
    tail_ratio: float
    verdict: str
    fitted_order: float
    slack: float = DEFAULT_SLACK
    notes: list[str] = field(default_factory=list)

    @property
    def bounded(self) -> bool:
        return self.verdict == BOUNDED

    def to_json(self) -> dict:
        return {
            "g": self.g_label,
            "verdict": self.verdict,
            "sup_ratio": self.sup_ratio,
            "tail_ratio": self.tail_ratio,
            "fitted_order": self.fitted_order,
            "slack": self.slack,
            "notes": list(self.notes),
            "points": [{"x": x, "y": y, "g": g, "ratio": r}
                       for (x, y), g, r in zip(self.points, self.g_values, self.ratios)],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["x", "y", "g", "ratio"])
        for (x, y), g, r in zip(self.points, self.g_values, self.ratios):
            wr.writerow([f"{x:.17g}", f"{y:.17g}", f"{g:.17g}", f"{r:.17g}"])
        return buf.getvalue()


def _last_quartile(x: np.ndarray) -> np.ndarray:
    n = x.size
    if np.all(x > 0):
        u = np.log(x)
        span = abs(u[-1] - u[0])
        idx = np.nonzero(np.abs(u - u[0]) >= 0.75 * span)[0]
    else:
        idx = np.arange(n - max(2, math.ceil(n / 4)), n)
    if idx.size < 2:
        idx = np.arange(n - 2, n)
    return idx


def rate_fit(points: Sequence[tuple[float, float]], g, label: str = "",
             slack: float = DEFAULT_SLACK) -> RateReport:
    """Evidence for y = O(g(x)) along the given points (last = asymptotic end).

    ``g`` is a callable of x or a sequence of its values at the points.
    """
    pts = [(float(x), float(y)) for x, y in points]
    if len(pts) < 8:
        raise ValueError("rate_fit needs at least 8 points")
    x = np.array([p[0] for p in pts])
    y = np.array([p[1] for p in pts])
    dx = np.diff(x)
    if not (np.all(dx > 0) or np.all(dx < 0)):
        raise ValueError("x must be strictly monotone")
    if np.any(y < 0):
        raise ValueError("y must be nonnegative")
    gv = np.asarray(g(x) if callable(g) else g, dtype=float)
    notes = []
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(y == 0, 0.0, y / gv)
    if not np.all(np.isfinite(y)) or np.any(np.isnan(ratios)):
        verdict = INCONCLUSIVE
        notes.append("non-finite values among the points")
    q = _last_quartile(x)
    tail = ratios[q]
    sup_ratio = float(np.nanmax(ratios)) if ratios.size else 0.0
    tail_ratio = float(np.nanmax(tail))
    if notes:
        pass
    elif not np.all(np.isfinite(tail)):
        verdict = UNBOUNDED
    elif tail_ratio == 0.0:
        verdict = BOUNDED
    elif tail[0] == 0.0:
        verdict = UNBOUNDED
    else:
        verdict = BOUNDED if tail_ratio <= (1.0 + slack) * tail[0] else UNBOUNDED
    pos = (x > 0) & (y > 0)
    if pos.sum() >= 2:
        fitted = float(np.polyfit(np.log(x[pos]), np.log(y[pos]), 1)[0])
    else:
        fitted = math.nan
    return RateReport(pts, label, gv.tolist(), ratios.tolist(), sup_ratio, tail_ratio,
                      verdict, fitted, slack, notes)


def _tail_integral(w: Majorant, X: float) -> tuple[float, list[str]]:
    """Estimate of sum_{v > V} ω(1/v)/v as ∫_X^∞ ω(1/x)/x dx, X = V + 1/2."""
    if w.family == "power":
        return X ** -w.beta / w.beta, []
    if w.family == "power_log":
        b, g = w.beta, w.gamma
        U = 1.0 + math.log(X)
        # ∫_X^∞ x^{-1-β} ln(ex)^γ dx = e^β ∫_U^∞ e^{-βu} u^γ du
        if g > -1.0:
            val = math.exp(b) * b ** (-(g + 1)) * special.gamma(g + 1) * special.gammaincc(g + 1, b * U)
        else:
            val = math.exp(b) * integrate.quad(lambda u: math.exp(-b * u) * u ** g, U, math.inf)[0]
        return float(val), []
    notes = []
    val = w.loglog_integral(0.0, 1.0 / X)
    if w.t_min < 1.0 / X:
        notes.append(f"tail integrated over the table down to t={w.t_min:g}; "
                     "contribution below the table is taken as 0")
    else:
        notes.append("table does not reach below 1/V; tail taken as 0")
    return val, notes


def check_B(w: Majorant, n_max: int, V: int | None = None,
            slack: float = DEFAULT_SLACK) -> RateReport:
    """Condition (B): sum_{v>n} ω(1/v)/v = O(ω(1/n)), n = 1..n_max.

    The sum is explicit up to V and completed by an integral tail.
    """
    V = 10 * n_max if V is None else V
    if V < 10 * n_max:
        raise ValueError("V must be at least 10 * n_max")
    v = np.arange(1, V + 1, dtype=float)
    terms = w(1.0 / v) / v
    # suffix[n] = sum_{v=n+1}^{V} terms, accumulated from the small end
    suffix = np.concatenate([np.cumsum(terms[::-1])[::-1][1:], [0.0]])
    tail_val, notes = _tail_integral(w, V + 0.5)
    n = np.arange(1, n_max + 1, dtype=float)
    y = suffix[:n_max] + tail_val
    rep = rate_fit(list(zip(n, y)), w(1.0 / n), f"omega(1/n), omega={w.label()}", slack)
    rep.notes.extend(notes)
    return rep


def check_Bs(w: Majorant, s: int, n_max: int, slack: float = DEFAULT_SLACK) -> RateReport:
    """Condition (B_s): sum_{v<=n} v^{s-1} ω(1/v) = O(n^s ω(1/n))."""
    if s < 1 or int(s) != s:
        raise ValueError("s must be a positive integer")
    v = np.arange(1, n_max + 1, dtype=float)
    y = np.cumsum(v ** (s - 1) * w(1.0 / v))
    g = v ** s * w(1.0 / v)
    return rate_fit(list(zip(v, y)), g, f"n^{s} omega(1/n), omega={w.label()}", slack)


def remark1_check(w: Majorant, s: int, r: int, rho_list: Sequence[float], gate: bool = True,
                  n_max: int = 256, slack: float = DEFAULT_SLACK) -> RateReport:
    """(1-ρ)^r = O((1-ρ)^{r-s} ω(1-ρ)) as ρ → 1-, i.e. ω(1-ρ)/(1-ρ)^s stays
    away from zero.  A ``bounded`` verdict means the relation holds.

    With ``gate`` the input must first pass (B_s).
    """
    if r < s:
        raise ValueError("need r >= s")
    if gate:
        pre = check_Bs(w, s, n_max, slack)
        if not pre.bounded:
            raise MajorantConditionError(f"omega fails condition (B_{s})", pre)
    rho = np.asarray(rho_list, dtype=float)
    d = 1.0 - rho
    pts = list(zip(d, d ** r))
    return rate_fit(pts, d ** (r - s) * w(d),
                    f"(1-rho)^{r - s} omega(1-rho), omega={w.label()}", slack)
