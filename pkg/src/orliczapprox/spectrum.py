"""Finitely supported Fourier spectra, sampled periodic functions and the
test-function families used throughout the experiments."""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Mapping, Union

import numpy as np

from .orlicz import OrliczFunction, luxemburg_norm

__all__ = [
    "CoeffSeq",
    "Sampled",
    "PeriodicFunction",
    "AliasingError",
    "DEFAULT_K_MAX",
    "fourier_coeffs",
    "synth",
    "sample",
    "tail",
    "head",
    "best_approx",
    "power_decay",
    "single_harmonic",
    "random_sparse",
    "make_family",
]

DEFAULT_K_MAX = 2 ** 16
_DROP_BELOW = 1e-300


class AliasingError(ValueError):
    pass


class CoeffSeq:
    """Immutable finite map ``k -> c_k`` from integer frequencies to complex
    amplitudes, kept sorted by ``k`` with no (near-)zero entries."""

    __slots__ = ("_k", "_c")

    def __init__(self, k=(), c=(), K_max: int = DEFAULT_K_MAX):
        k = np.asarray(k, dtype=np.int64).ravel()
        c = np.asarray(c, dtype=complex).ravel()
        if k.shape != c.shape:
            raise ValueError("frequency and amplitude arrays differ in length")
        if k.size and np.abs(k).max() > K_max:
            raise ValueError(f"frequency {int(np.abs(k).max())} exceeds K_max={K_max}")
        if k.size > 1:
            uk, inv = np.unique(k, return_inverse=True)
            if uk.size != k.size:
                c = (np.bincount(inv, weights=c.real, minlength=uk.size)
                     + 1j * np.bincount(inv, weights=c.imag, minlength=uk.size))
            else:
                c = c[np.argsort(k, kind="stable")]
            k = uk
        keep = np.abs(c) >= _DROP_BELOW
        k, c = k[keep], c[keep]
        k.flags.writeable = False
        c.flags.writeable = False
        self._k, self._c = k, c

    @classmethod
    def from_dict(cls, entries: Mapping[int, complex]) -> "CoeffSeq":
        return cls(list(entries.keys()), list(entries.values()))

    @classmethod
    def zero(cls) -> "CoeffSeq":
        return cls()

    @property
    def k(self) -> np.ndarray:
        return self._k

    @property
    def amplitudes(self) -> np.ndarray:
        return self._c

    def to_dict(self) -> dict[int, complex]:
        return {int(k): complex(c) for k, c in zip(self._k, self._c)}

    def __len__(self):
        return self._k.size

    def __iter__(self):
        return iter(self.to_dict().items())

    def __getitem__(self, k: int) -> complex:
        i = np.searchsorted(self._k, k)
        if i < self._k.size and self._k[i] == k:
            return complex(self._c[i])
        return 0j

    def __bool__(self):
        return self._k.size > 0

    @property
    def max_freq(self) -> int:
        return int(np.abs(self._k).max()) if self._k.size else 0

    def __add__(self, other: "CoeffSeq") -> "CoeffSeq":
        return CoeffSeq(np.concatenate([self._k, other._k]),
                        np.concatenate([self._c, other._c]))

    def __neg__(self):
        return CoeffSeq(self._k, -self._c)

    def __sub__(self, other: "CoeffSeq") -> "CoeffSeq":
        return self + (-other)

    def __mul__(self, scalar):
        return CoeffSeq(self._k, self._c * scalar)

    __rmul__ = __mul__

    def map_multiplier(self, fn: Callable[[np.ndarray], np.ndarray]) -> "CoeffSeq":
        """Entrywise product ``c_k * fn(|k|)`` (``fn`` is vectorized over |k|)."""
        return CoeffSeq(self._k, self._c * fn(np.abs(self._k)))

    def restrict(self, mask: np.ndarray) -> "CoeffSeq":
        return CoeffSeq(self._k[mask], self._c[mask])

    def allclose(self, other: "CoeffSeq", atol: float = 1e-12) -> bool:
        diff = self - other
        return bool(np.all(np.abs(diff.amplitudes) <= atol))

    def __eq__(self, other):
        if not isinstance(other, CoeffSeq):
            return NotImplemented
        return np.array_equal(self._k, other._k) and np.array_equal(self._c, other._c)

    __hash__ = None

    def __repr__(self):
        if len(self) > 6:
            return f"CoeffSeq(<{len(self)} entries, |k| <= {self.max_freq}>)"
        body = ", ".join(f"{k}: {c:.6g}" for k, c in self.to_dict().items())
        return f"CoeffSeq({{{body}}})"

    def to_json(self) -> dict:
        return {"coeffs": [{"k": int(k), "re": float(c.real), "im": float(c.imag)}
                           for k, c in zip(self._k, self._c)]}

    @classmethod
    def from_json(cls, obj) -> "CoeffSeq":
        if isinstance(obj, str):
            obj = json.loads(obj) if obj.strip() else {"coeffs": []}
        rows = obj.get("coeffs", [])
        return cls([r["k"] for r in rows],
                   [complex(r.get("re", 0.0), r.get("im", 0.0)) for r in rows])


@dataclass(frozen=True, eq=False)
class Sampled:
    """Values of a 2π-periodic function on the grid x_j = 2πj/N."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex).ravel()
        n = v.size
        if n < 2 or n & (n - 1):
            raise ValueError(f"sample count must be a power of two >= 2, got {n}")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @property
    def N(self) -> int:
        return self.values.size

    @property
    def grid(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.N) / self.N

    @classmethod
    def from_callable(cls, f: Callable[[np.ndarray], np.ndarray], N: int) -> "Sampled":
        return cls(f(2 * np.pi * np.arange(N) / N))

    def to_json(self) -> dict:
        return {"samples_re": self.values.real.tolist(),
                "samples_im": self.values.imag.tolist()}

    @classmethod
    def from_json(cls, obj: Mapping) -> "Sampled":
        re = np.asarray(obj["samples_re"], dtype=float)
        im = np.asarray(obj.get("samples_im", np.zeros_like(re)), dtype=float)
        return cls(re + 1j * im)


PeriodicFunction = Union[CoeffSeq, Sampled]


def fourier_coeffs(f: Sampled, K: int) -> CoeffSeq:
    """Coefficients f̂(k), |k| <= K, from the 1/N-normalized DFT.

    Exact for trigonometric polynomials of degree < N/2.
    """
    if K >= f.N // 2:
        raise AliasingError(f"K={K} must be below N/2={f.N // 2}")
    spec = np.fft.fft(f.values) / f.N
    ks = np.arange(-K, K + 1)
    return CoeffSeq(ks, spec[ks % f.N])


def synth(c: CoeffSeq, x):
    """Direct evaluation of sum_k c_k exp(ikx); ``x`` may be an array."""
    x = np.asarray(x, dtype=float)
    out = np.exp(1j * np.multiply.outer(x, c.k)) @ c.amplitudes if len(c) else np.zeros(x.shape, complex)
    return complex(out) if out.ndim == 0 else out


def sample(c: CoeffSeq, N: int) -> Sampled:
    return Sampled(synth(c, 2 * np.pi * np.arange(N) / N))


def tail(c: CoeffSeq, r: int) -> CoeffSeq:
    """f_r: keep only the entries with |k| > r."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    return c.restrict(np.abs(c.k) > r)


def head(c: CoeffSeq, m: int) -> CoeffSeq:
    """S_m(f): keep only the entries with |k| <= m."""
    return c.restrict(np.abs(c.k) <= m)


def best_approx(M: OrliczFunction, c: CoeffSeq, m: int) -> float:
    """E_{m+1}(f)_M, which in S_M equals the Fourier-sum error ||f - S_m f||_M."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return luxemburg_norm(M, tail(c, m)).value


# -- test families -----------------------------------------------------------

def power_decay(beta: float, K: int) -> CoeffSeq:
    """f̂(k) = |k|^-beta for 1 <= |k| <= K, f̂(0) = 0."""
    if beta <= 0 or K < 1:
        raise ValueError("power_decay needs beta > 0 and K >= 1")
    k = np.arange(1, K + 1)
    amp = k.astype(float) ** -beta
    return CoeffSeq(np.concatenate([-k[::-1], k]), np.concatenate([amp[::-1], amp]))


def single_harmonic(k: int, amplitude: complex = 1.0) -> CoeffSeq:
    return CoeffSeq([k], [amplitude])


def random_sparse(seed: int, support: int, K: int, law: str = "gaussian") -> CoeffSeq:
    """``support`` distinct frequencies drawn from [-K, K] with amplitudes from
    ``law``: "gaussian" (complex normal), "uniform_phase" (unit modulus) or
    "decaying" (complex normal scaled by (1+|k|)^-2)."""
    if support > 2 * K + 1:
        raise ValueError("support larger than the frequency range")
    rng = np.random.default_rng(seed)
    ks = rng.choice(np.arange(-K, K + 1), size=support, replace=False)
    if law == "uniform_phase":
        amps = np.exp(2j * np.pi * rng.random(support))
    elif law in ("gaussian", "decaying"):
        amps = rng.standard_normal(support) + 1j * rng.standard_normal(support)
        if law == "decaying":
            amps = amps * (1.0 + np.abs(ks)) ** -2.0
    else:
        raise ValueError(f"unknown amplitude law {law!r}")
    return CoeffSeq(ks, amps)


def make_family(spec: Mapping, seed: int | None = None) -> CoeffSeq:
    """Build a test function from its JSON record, e.g.
    ``{"family": "power_decay", "beta": 2.0, "K": 64}``."""
    fam = spec.get("family")
    if fam == "power_decay":
        return power_decay(float(spec["beta"]), int(spec["K"]))
    if fam == "single_harmonic":
        amp = complex(spec.get("re", spec.get("amplitude", 1.0)), spec.get("im", 0.0))
        return single_harmonic(int(spec["k"]), amp)
    if fam == "random_sparse":
        s = spec.get("seed", seed)
        if s is None:
            raise ValueError("random_sparse needs a seed")
        return random_sparse(int(s), int(spec["support"]), int(spec["K"]),
                             spec.get("law", "gaussian"))
    if fam == "zero":
        return CoeffSeq.zero()
    raise ValueError(f"unknown test family {fam!r}")

