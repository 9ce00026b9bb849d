"""Generalized derivatives, fractional differences, moduli of smoothness and
K-functionals on finitely supported spectra.

The fractional difference acts diagonally: its k-th coefficient is
(1 - e^{-ikh})^alpha c_k, whose modulus is |2 sin(kh/2)|^alpha |c_k|.  Every
norm in S_M depends only on coefficient moduli, so the difference is stored
as that nonnegative multiplier times the original c_k.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, NamedTuple

import numpy as np

from .operators import falling_factorial
from .orlicz import DEFAULT_TOL, OrliczFunction, luxemburg_norm, luxemburg_norms
from .spectrum import CoeffSeq, best_approx, head, tail

__all__ = [
    "PsiSequence",
    "SmoothnessQuery",
    "KFunctional",
    "psi_derivative",
    "power_derivative",
    "radial_derivative",
    "frac_binom",
    "frac_binom_seq",
    "frac_difference",
    "frac_difference_multiplier",
    "modulus",
    "k_functional",
    "lowfreq_norm",
    "jackson_ratio",
]

_BATCH_ELEMS = 1 << 22


@dataclass(frozen=True)
class PsiSequence:
    """ψ defining the derivative f^ψ with coefficients c_k/ψ(k), k ∉ Z(ψ).

    ``power(s)``   ψ(k) = |k|^-s; k = 0 is annihilated
    ``radial(r)``  ψ(k) = (|k|-r)!/|k|! for |k| >= r, zero set {|k| <= r-1}
    ``custom``     ψ given by a finite table with a declared zero set
    """

    kind: str
    order: float = 0.0
    table: Mapping[int, float] = field(default_factory=dict)
    zero_set: frozenset = frozenset()

    def __post_init__(self):
        if self.kind == "power":
            if self.order <= 0:
                raise ValueError("power ψ needs s > 0")
            object.__setattr__(self, "zero_set", frozenset({0}))
        elif self.kind == "radial":
            r = int(self.order)
            if r != self.order or r < 1:
                raise ValueError("radial ψ needs a positive integer order")
            object.__setattr__(self, "zero_set", frozenset(range(-r + 1, r)))
        elif self.kind == "custom":
            object.__setattr__(self, "table", {int(k): float(v) for k, v in self.table.items()})
            object.__setattr__(self, "zero_set", frozenset(int(k) for k in self.zero_set))
        else:
            raise ValueError(f"unknown ψ family {self.kind!r}")

    @classmethod
    def power(cls, s: float) -> "PsiSequence":
        return cls("power", float(s))

    @classmethod
    def radial(cls, r: int) -> "PsiSequence":
        return cls("radial", r)

    @classmethod
    def custom(cls, table: Mapping[int, float], zero_set=()) -> "PsiSequence":
        return cls("custom", 0.0, dict(table), frozenset(zero_set))

    def inverse(self, k: np.ndarray) -> np.ndarray:
        """1/ψ(k), with 0 on the zero set."""
        kabs = np.abs(k)
        if self.kind == "power":
            return np.where(kabs == 0, 0.0, kabs.astype(float) ** self.order)
        if self.kind == "radial":
            return falling_factorial(kabs, int(self.order))
        out = np.zeros(k.shape)
        for i, kk in enumerate(k.tolist()):
            if kk in self.zero_set:
                continue
            try:
                v = self.table[kk]
            except KeyError:
                raise ValueError(f"ψ is not tabulated at k={kk}") from None
            if v == 0.0:
                raise ValueError(f"ψ({kk}) = 0 but {kk} is not in the declared zero set")
            out[i] = 1.0 / v
        return out


def psi_derivative(c: CoeffSeq, psi: PsiSequence) -> CoeffSeq:
    return CoeffSeq(c.k, c.amplitudes * psi.inverse(c.k))


def power_derivative(c: CoeffSeq, s: float) -> CoeffSeq:
    """f^(s): coefficients |k|^s c_k."""
    return psi_derivative(c, PsiSequence.power(s))


def radial_derivative(c: CoeffSeq, r: int) -> CoeffSeq:
    """f^[r]: coefficients |k|!/(|k|-r)! c_k; r = 0 returns c."""
    if r == 0:
        return c
    return psi_derivative(c, PsiSequence.radial(r))


def frac_binom(alpha: float, j: int) -> float:
    """alpha(alpha-1)...(alpha-j+1)/j!."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    out = 1.0
    for i in range(j):
        out *= (alpha - i) / (i + 1)
    return out


def frac_binom_seq(alpha: float, J: int) -> np.ndarray:
    """[frac_binom(alpha, j) for j in 0..J] via the same running product."""
    i = np.arange(J, dtype=float)
    return np.concatenate([[1.0], np.cumprod((alpha - i) / (i + 1))])


def frac_difference_multiplier(kabs, h, alpha: float) -> np.ndarray:
    """|2 sin(kh/2)|^alpha; an array ``h`` gives one row per step."""
    half = np.multiply.outer(0.5 * np.asarray(h, dtype=float), np.asarray(kabs, dtype=float))
    return np.abs(2.0 * np.sin(half)) ** alpha


def frac_difference(c: CoeffSeq, h: float, alpha: float) -> CoeffSeq:
    """Spectrum of Δ_h^α f up to a unimodular factor per entry."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    return c.map_multiplier(lambda k: frac_difference_multiplier(k, h, alpha))


@dataclass(frozen=True)
class SmoothnessQuery:
    alpha: float
    delta: float
    h_grid: int = 64

    def __post_init__(self):
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")
        if not 0 < self.delta <= 2 * math.pi:
            raise ValueError("delta must lie in (0, 2π]")
        if self.h_grid < 16:
            raise ValueError("h_grid must be at least 16")

    def to_json(self) -> dict:
        return {"alpha": self.alpha, "delta": self.delta, "h_grid": self.h_grid}

    @classmethod
    def from_json(cls, obj: Mapping) -> "SmoothnessQuery":
        return cls(float(obj["alpha"]), float(obj["delta"]), int(obj.get("h_grid", 64)))


def _row_norms(M, rows: np.ndarray, tol: float) -> np.ndarray:
    n_rows, width = rows.shape
    step = max(1, _BATCH_ELEMS // max(width, 1))
    return np.concatenate([luxemburg_norms(M, rows[i:i + step], tol)
                           for i in range(0, n_rows, step)]) if n_rows else np.zeros(0)


def _grid_sup(M, amp, kabs, alpha, delta, n, tol):
    hs = delta * (np.arange(1, n + 1) / n)
    out = np.empty(n)
    step = max(1, _BATCH_ELEMS // max(amp.size, 1))
    for i in range(0, n, step):
        block = frac_difference_multiplier(kabs, hs[i:i + step], alpha)
        out[i:i + step] = luxemburg_norms(M, block * amp, tol)
    return float(out.max())


def modulus(M: OrliczFunction, c: CoeffSeq, q: SmoothnessQuery, refine: bool = False,
            tol: float = DEFAULT_TOL, max_grid: int = 1 << 14) -> float:
    """ω_α(f, δ)_M as a maximum over the grid h = δ i / h_grid, i = 1..h_grid.

    With ``refine`` the grid is doubled (grids stay nested) until the value
    moves by less than 1e-6 relative on two consecutive doublings; a single
    quiet step can happen when the new points straddle the peak.
    """
    c = tail(c, 0)  # the k = 0 entry is annihilated by every difference
    if not len(c):
        return 0.0
    amp = np.abs(c.amplitudes)
    kabs = np.abs(c.k).astype(float)
    n = q.h_grid
    val = _grid_sup(M, amp, kabs, q.alpha, q.delta, n, tol)
    quiet = 0
    while refine and n < max_grid:
        n *= 2
        new = _grid_sup(M, amp, kabs, q.alpha, q.delta, n, tol)
        quiet = quiet + 1 if abs(new - val) <= 1e-6 * max(abs(new), 1e-300) else 0
        val = new
        if quiet == 2:
            break
    return val


class KFunctional(NamedTuple):
    value: float
    witness: CoeffSeq
    degree: int


def k_functional(M: OrliczFunction, c: CoeffSeq, delta: float, n: int, m_max: int,
                 tol: float = DEFAULT_TOL) -> KFunctional:
    """Upper estimate of K_n(δ, f)_M over the Fourier heads g_m = S_m(f),
    n-1 <= m <= m_max.

    Every candidate agrees with f for |k| <= n-1, and g_m only changes when m
    crosses a frequency in the support, so only those m are evaluated.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    if m_max < n:
        raise ValueError("m_max must be at least n")
    if not len(c):
        return KFunctional(0.0, c, n - 1)
    kabs = np.abs(c.k)
    ms = np.unique(np.concatenate([[n - 1], kabs[(kabs >= n) & (kabs <= m_max)]]))
    amp = np.abs(c.amplitudes)
    deriv = amp * falling_factorial(kabs, n)
    inside = kabs[None, :] <= ms[:, None]
    err = _row_norms(M, np.where(inside, 0.0, amp[None, :]), tol)
    smooth = _row_norms(M, np.where(inside, deriv[None, :], 0.0), tol)
    total = err + delta ** n * smooth
    best = int(np.argmin(total))
    m = int(ms[best])
    return KFunctional(float(total[best]), head(c, m), m)


def lowfreq_norm(M: OrliczFunction, c: CoeffSeq, n: int) -> float:
    """||sum_{0<|k|<=n-1} c_k e^{ikx}||_M."""
    kabs = np.abs(c.k)
    return luxemburg_norm(M, c.restrict((kabs > 0) & (kabs <= n - 1))).value


def jackson_ratio(M: OrliczFunction, c: CoeffSeq, m: int, alpha: float, h_grid: int = 64) -> float:
    """E_{m+1}(f)_M / ω_α(f, 1/m)_M."""
    w = modulus(M, c, SmoothnessQuery(alpha, 1.0 / m, h_grid))
    e = best_approx(M, c, m)
    return e / w if w > 0 else (0.0 if e == 0 else math.inf)
