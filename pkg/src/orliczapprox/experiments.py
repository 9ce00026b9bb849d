"""Theorem-reproduction pipelines behind the command-line interface.

Each ``run_*`` function takes an :class:`ExperimentConfig` and returns a
:class:`Result` holding a table (ordered rows), the rate reports and any
invariant violations.  Nothing here prints or touches the filesystem except
for loading coefficient files named in the config.
"""
from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from typing import Any, Mapping

import numpy as np

from . import calculus, operators
from .majorants import (Majorant, MajorantConditionError, RateReport, check_B, check_Bs,
                        rate_fit, remark1_check, validate_majorant)
from .orlicz import OrliczFunction, luxemburg_norm, validate_orlicz
from .spectrum import CoeffSeq, Sampled, fourier_coeffs, head, make_family

__all__ = ["ConfigError", "ExperimentConfig", "Result", "load_config", "COMMANDS", "run"]


class ConfigError(ValueError):
    """Malformed or inconsistent experiment configuration (exit code 1)."""


@dataclass
class ExperimentConfig:
    orlicz: OrliczFunction = field(default_factory=lambda: OrliczFunction.power(2))
    function: Any = None  # family record, inline coefficients, or a file path
    majorant: Majorant | None = None
    s: int = 1
    r: int = 1
    n_list: list[int] = field(default_factory=list)
    rho_list: list[float] = field(default_factory=list)
    delta_list: list[float] = field(default_factory=list)
    derivative: str = "psi"
    h_grid: int = 64
    m_max: int | None = None
    n_max: int = 128
    K: int | None = None
    tol: float = 1e-9
    slack: float = 0.1
    remark1_gate: bool = True
    seed: int | None = None
    refine: bool = False
    base_dir: str = "."
    output: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, raw: Mapping, base_dir: str = ".") -> "ExperimentConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(raw) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        kw = dict(raw)
        try:
            if "orlicz" in kw:
                kw["orlicz"] = OrliczFunction.from_json(kw["orlicz"])
            if kw.get("majorant") is not None:
                kw["majorant"] = Majorant.from_json(kw["majorant"])
            for name in ("s", "r", "h_grid", "n_max"):
                if name in kw:
                    kw[name] = int(kw[name])
            kw["n_list"] = [int(n) for n in kw.get("n_list", [])]
            kw["rho_list"] = [float(x) for x in kw.get("rho_list", [])]
            kw["delta_list"] = [float(x) for x in kw.get("delta_list", [])]
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"invalid config value: {exc}") from exc
        kw["base_dir"] = base_dir
        cfg = cls(**kw)
        for name in ("n_list", "rho_list", "delta_list"):
            vals = getattr(cfg, name)
            if any(b <= a for a, b in zip(vals, vals[1:])):
                raise ConfigError(f"{name} must be sorted in increasing order")
        if cfg.derivative not in ("psi", "radial"):
            raise ConfigError("derivative must be 'psi' or 'radial'")
        if cfg.s < 1 or cfg.r < 1:
            raise ConfigError("s and r must be positive integers")
        return cfg

    def require(self, *names: str, min_len: int = 1) -> None:
        for name in names:
            vals = getattr(self, name)
            if vals is None or (isinstance(vals, list) and len(vals) < min_len):
                raise ConfigError(f"config needs {name}"
                                  + (f" with at least {min_len} entries" if min_len > 1 else ""))


def load_config(path: str) -> ExperimentConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: top level must be a JSON object")
    return ExperimentConfig.from_dict(raw, os.path.dirname(os.path.abspath(path)))


def load_function(cfg: ExperimentConfig) -> CoeffSeq:
    spec = cfg.function
    if spec is None:
        raise ConfigError("config needs a function")
    try:
        if isinstance(spec, str):
            path = os.path.join(cfg.base_dir, spec)
            try:
                with open(path, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise ConfigError(f"cannot read coefficient file: {exc}") from exc
            if not text.strip():
                return CoeffSeq.zero()
            try:
                obj = json.loads(text)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
            return _coeffs_from_record(obj, cfg)
        return _coeffs_from_record(spec, cfg)
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"invalid function record: {exc!r}") from exc
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"invalid function record: {exc}") from exc


def _coeffs_from_record(obj: Mapping, cfg: ExperimentConfig) -> CoeffSeq:
    if "coeffs" in obj:
        return CoeffSeq.from_json(obj)
    if "samples_re" in obj:
        f = Sampled.from_json(obj)
        K = cfg.K if cfg.K is not None else f.N // 2 - 1
        return fourier_coeffs(f, K)
    return make_family(obj, cfg.seed)


@dataclass
class Result:
    command: str
    columns: list[str]
    rows: list[list[Any]]
    reports: dict[str, RateReport] = field(default_factory=dict)
    summary: dict[str, Any] = field(default_factory=dict)
    violations: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)


def _norm(M, c: CoeffSeq) -> float:
    return luxemburg_norm(M, c).value


def _ratio(value: float, bound: float):
    if bound > 0:
        return value / bound
    return None if value == 0 else math.inf


def _premise_notes(w: Majorant, cfg: ExperimentConfig, s: int) -> list[str]:
    notes = []
    b = check_B(w, cfg.n_max, slack=cfg.slack)
    if not b.bounded:
        notes.append(f"premise (B) not confirmed for omega={w.label()}: {b.verdict}")
    bs = check_Bs(w, s, cfg.n_max, slack=cfg.slack)
    if not bs.bounded:
        notes.append(f"premise (B_{s}) not confirmed for omega={w.label()}: {bs.verdict}")
    return notes


def _long_rows(tag: str, params, values, bounds):
    return [[tag, p, v, b, _ratio(v, b)] for p, v, b in zip(params, values, bounds)]


def _report(x, values, bounds, label, cfg) -> RateReport:
    return rate_fit(list(zip(x, values)), np.asarray(bounds, dtype=float), label, cfg.slack)


# -- commands -----------------------------------------------------------------

def run_norm(cfg: ExperimentConfig) -> Result:
    c = load_function(cfg)
    nv = luxemburg_norm(cfg.orlicz, c)
    return Result("norm", ["value", "lo", "hi"], [[nv.value, nv.lo, nv.hi]])


def run_prop1(cfg: ExperimentConfig) -> Result:
    cfg.require("majorant")
    cfg.require("n_list", min_len=8)
    w, s, M = cfg.majorant, cfg.s, cfg.orlicz
    pre = check_B(w, cfg.n_max, slack=cfg.slack)
    if not pre.bounded:
        raise MajorantConditionError(f"omega={w.label()} fails condition (B)", pre)
    c = load_function(cfg)
    deriv = (calculus.radial_derivative(c, s) if cfg.derivative == "radial"
             else calculus.power_derivative(c, s))
    ns = np.array(cfg.n_list, dtype=float)
    wn = np.asarray(w(1.0 / ns))
    g1 = ns ** s * wn
    col1 = [_norm(M, head(deriv, n)) for n in cfg.n_list]
    col2 = [_norm(M, operators.Zygmund(n, s)(c) - c) for n in cfg.n_list]
    col3 = [calculus.modulus(M, c, calculus.SmoothnessQuery(s, 1.0 / n, cfg.h_grid), cfg.refine)
            for n in cfg.n_list]
    rows = [[n, a, b, d, _ratio(a, x), _ratio(b, y), _ratio(d, y)]
            for n, a, b, d, x, y in zip(cfg.n_list, col1, col2, col3, g1, wn)]
    dlabel = "f^[s]" if cfg.derivative == "radial" else "f^(s)"
    reports = {
        "statement1": _report(ns, col1, g1, f"||S_n({dlabel})|| vs n^s omega(1/n)", cfg),
        "statement2": _report(ns, col2, wn, "||f - Z_n^(s) f|| vs omega(1/n)", cfg),
        "statement3": _report(ns, col3, wn, "omega_s(f, 1/n) vs omega(1/n)", cfg),
    }
    cols = ["n", "norm_Sn_deriv", "err_zygmund", "modulus_s",
            "ratio_Sn_deriv", "ratio_err_zygmund", "ratio_modulus_s"]
    notes = []
    if cfg.derivative == "radial":
        bs = check_Bs(w, s, cfg.n_max, slack=cfg.slack)
        if not bs.bounded:
            notes.append(f"premise (B_{s}) not confirmed for omega={w.label()}: {bs.verdict}")
    return Result("prop1", cols, rows, reports, notes=notes)


_LONG_COLUMNS = ["statement", "param", "value", "bound", "ratio"]


def run_theorem1(cfg: ExperimentConfig) -> Result:
    cfg.require("majorant")
    cfg.require("n_list", "rho_list", min_len=8)
    w, s, r, M = cfg.majorant, cfg.s, cfg.r, cfg.orlicz
    if s > r:
        raise ConfigError("theorem1 needs s <= r")
    c = load_function(cfg)
    rho = np.array(cfg.rho_list)
    if np.any(rho >= 1.0) or np.any(rho < 0.0):
        raise ConfigError("rho_list entries must lie in [0, 1)")
    d = 1.0 - rho
    ns = np.array(cfg.n_list, dtype=float)
    wd, wn = np.asarray(w(d)), np.asarray(w(1.0 / ns))
    deriv_r = calculus.radial_derivative(c, r)
    low = calculus.radial_derivative(c, r - s)

    v1 = [_norm(M, c - operators.TaylorAbelPoisson(p, r)(c)) for p in cfg.rho_list]
    b1 = d ** (r - s) * wd
    v2 = [_norm(M, operators.poisson_radial_derivative(c, p, r)) for p in cfg.rho_list]
    b2 = d ** (-s) * wd
    v3 = [_norm(M, head(deriv_r, n)) for n in cfg.n_list]
    b3 = ns ** s * wn
    v4 = [calculus.modulus(M, low, calculus.SmoothnessQuery(s, 1.0 / n, cfg.h_grid), cfg.refine)
          for n in cfg.n_list]
    b4 = wn

    rows = (_long_rows("1", cfg.rho_list, v1, b1) + _long_rows("2", cfg.rho_list, v2, b2)
            + _long_rows("3", cfg.n_list, v3, b3) + _long_rows("4", cfg.n_list, v4, b4))
    reports = {
        "statement1": _report(d, v1, b1, "||f - A_{rho,r} f|| vs (1-rho)^{r-s} omega(1-rho)", cfg),
        "statement2": _report(d, v2, b2, "||P(f^[r])(rho)|| vs (1-rho)^{-s} omega(1-rho)", cfg),
        "statement3": _report(ns, v3, b3, "||S_n(f^[r])|| vs n^s omega(1/n)", cfg),
        "statement4": _report(ns, v4, b4, "omega_s(f^[r-s], 1/n) vs omega(1/n)", cfg),
    }
    return Result("theorem1", _LONG_COLUMNS, rows, reports, notes=_premise_notes(w, cfg, s))


def run_theorem2(cfg: ExperimentConfig) -> Result:
    cfg.require("majorant")
    cfg.require("n_list", "rho_list", min_len=8)
    w, s, M = cfg.majorant, cfg.s, cfg.orlicz
    c = load_function(cfg)
    rho = np.array(cfg.rho_list)
    if np.any(rho >= 1.0) or np.any(rho < 0.0):
        raise ConfigError("rho_list entries must lie in [0, 1)")
    d = 1.0 - rho
    ns = np.array(cfg.n_list, dtype=float)
    wd, wn = np.asarray(w(d)), np.asarray(w(1.0 / ns))
    deriv_s = calculus.power_derivative(c, s)
    low = calculus.power_derivative(c, s - 1) if s > 1 else c

    v1 = [_norm(M, c - operators.AbelPoisson(p, s)(c)) for p in cfg.rho_list]
    v2 = [_norm(M, operators.PoissonIntegral(p)(deriv_s)) for p in cfg.rho_list]
    b2 = wd / d
    v3 = [calculus.modulus(M, low, calculus.SmoothnessQuery(1, 1.0 / n, cfg.h_grid), cfg.refine)
          for n in cfg.n_list]
    rows = (_long_rows("1", cfg.rho_list, v1, wd) + _long_rows("2", cfg.rho_list, v2, b2)
            + _long_rows("3", cfg.n_list, v3, wn))
    reports = {
        "statement1": _report(d, v1, wd, "||f - P_{rho,s} f|| vs omega(1-rho)", cfg),
        "statement2": _report(d, v2, b2, "||P(f^(s))(rho)|| vs omega(1-rho)/(1-rho)", cfg),
        "statement3": _report(ns, v3, wn, "omega_1(f^(s-1), 1/n) vs omega(1/n)", cfg),
    }
    return Result("theorem2", _LONG_COLUMNS, rows, reports, notes=_premise_notes(w, cfg, s))


def run_asymp(cfg: ExperimentConfig) -> Result:
    cfg.require("rho_list")
    M, s = cfg.orlicz, cfg.s
    c = load_function(cfg)
    dnorm = _norm(M, calculus.power_derivative(c, s))
    rows, violations = [], []
    for p in cfg.rho_list:
        err = _norm(M, c - operators.AbelPoisson(p, s)(c))
        bound = (1.0 - p) * dnorm
        ratio = err / bound if bound > 0 else None
        if ratio is not None and ratio > 1.0 + cfg.tol:
            violations.append(f"ratio {ratio:.17g} > 1 at rho={p:.17g}")
        rows.append([p, err, bound, ratio])
    return Result("asymp", ["rho", "err_abel_poisson", "bound", "ratio"], rows,
                  violations=violations)


def theorem4_constant(n: int) -> float:
    return min(2.0 ** -n, float(n) ** -n)


def run_theorem4(cfg: ExperimentConfig) -> Result:
    cfg.require("n_list", "delta_list")
    M = cfg.orlicz
    c = load_function(cfg)
    m_max = cfg.m_max if cfg.m_max is not None else max(c.max_freq, max(cfg.n_list))
    rows, violations, summary = [], [], {}
    for n in cfg.n_list:
        if n < 1:
            raise ConfigError("theorem4 needs n >= 1")
        c1 = theorem4_constant(n)
        low = calculus.lowfreq_norm(M, c, n)
        sup = 0.0
        for delta in cfg.delta_list:
            w = calculus.modulus(M, c, calculus.SmoothnessQuery(n, delta, cfg.h_grid), cfg.refine)
            kf = calculus.k_functional(M, c, delta, n, max(m_max, n)).value
            lowterm = delta ** n * low
            upper = kf + lowterm
            lower_ok = c1 * w <= upper
            if not lower_ok:
                violations.append(f"lower bound fails at n={n}, delta={delta:.17g}")
            ratio = upper / w if w > 0 else None
            if ratio is not None:
                sup = max(sup, ratio)
            rows.append([n, delta, w, kf, lowterm, c1, int(lower_ok), ratio])
        summary[f"upper_ratio_sup_n{n}"] = sup
    cols = ["n", "delta", "modulus_n", "k_functional", "lowfreq_term", "c1",
            "lower_ok", "upper_ratio"]
    return Result("theorem4", cols, rows, summary=summary, violations=violations)


def run_majorant(cfg: ExperimentConfig) -> Result:
    cfg.require("majorant")
    w, s, r = cfg.majorant, cfg.s, cfg.r
    reports = {"B": check_B(w, cfg.n_max, slack=cfg.slack),
               f"B_{s}": check_Bs(w, s, cfg.n_max, slack=cfg.slack)}
    notes = []
    if cfg.rho_list:
        cfg.require("rho_list", min_len=8)
        try:
            reports["remark1"] = remark1_check(w, s, r, cfg.rho_list, cfg.remark1_gate,
                                               cfg.n_max, cfg.slack)
        except MajorantConditionError as exc:
            notes.append(f"remark1 rejected: {exc}")
    rows = [[name, rep.g_label, rep.verdict, rep.sup_ratio, rep.tail_ratio, rep.fitted_order]
            for name, rep in reports.items()]
    cols = ["check", "g", "verdict", "sup_ratio", "tail_ratio", "fitted_order"]
    return Result("majorant", cols, rows, reports, notes=notes)


def run_validate(cfg: ExperimentConfig) -> Result:
    rows, violations = [], []
    rep = validate_orlicz(cfg.orlicz)
    rows.append(["orlicz", int(rep.ok), "; ".join(rep.violations)])
    violations += [f"orlicz: {v}" for v in rep.violations]
    if cfg.majorant is not None:
        bad = validate_majorant(cfg.majorant)
        rows.append(["majorant", int(not bad), "; ".join(bad)])
        violations += [f"majorant: {v}" for v in bad]
    return Result("validate", ["object", "ok", "violations"], rows, violations=violations)


COMMANDS = {
    "norm": run_norm,
    "prop1": run_prop1,
    "theorem1": run_theorem1,
    "theorem2": run_theorem2,
    "asymp": run_asymp,
    "theorem4": run_theorem4,
    "majorant": run_majorant,
    "validate": run_validate,
}


def run(command: str, cfg: ExperimentConfig) -> Result:
    return COMMANDS[command](cfg)
