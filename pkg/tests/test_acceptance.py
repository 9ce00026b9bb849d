"""Acceptance criteria AC1-AC10, one test each, with a PASS/FAIL line per criterion."""
import contextlib
import json
import math
import os
import subprocess
import sys
import time

import mpmath
import numpy as np
import pytest

from orliczapprox import (CoeffSeq, Majorant, OrliczFunction, SmoothnessQuery, TaylorAbelPoisson,
                          binomial_terms, check_B, check_Bs, frac_difference, luxemburg_norm,
                          modulus, power_derivative)
from orliczapprox.experiments import ExperimentConfig, run

pytestmark = pytest.mark.acceptance

CONFIGS = os.path.join(os.path.dirname(__file__), os.pardir, "configs")
THREE_M = [OrliczFunction.power(2), OrliczFunction.power_log(2, 1), OrliczFunction.exp_minus_one()]


@pytest.fixture
def criterion(capsys):
    @contextlib.contextmanager
    def timed(name, limit=None):
        start = time.perf_counter()
        status, detail = "FAIL", ""
        try:
            yield
            elapsed = time.perf_counter() - start
            if limit is not None and elapsed >= limit:
                detail = f"runtime {elapsed:.2f}s exceeds {limit}s"
                raise AssertionError(detail)
            status, detail = "PASS", f"{elapsed:.2f}s"
        except AssertionError as exc:
            detail = detail or str(exc).splitlines()[0]
            raise
        finally:
            with capsys.disabled():
                print(f"\n{name} {status} ({detail})")
    return timed


def random_poly(rng, support, K, scale=1.0):
    ks = rng.choice(np.arange(-K, K + 1), size=support, replace=False)
    return CoeffSeq(ks, scale * (rng.standard_normal(support) + 1j * rng.standard_normal(support)))


def load(name):
    with open(os.path.join(CONFIGS, name)) as fh:
        return json.load(fh)


def test_ac1_lp_equivalence(criterion):
    rng = np.random.default_rng(1)
    with criterion("AC1", limit=5):
        worst = 0.0
        for p in (1.0, 2.0, 3.5):
            M = OrliczFunction.power(p)
            for _ in range(1000):
                c = random_poly(rng, int(rng.integers(1, 65)), 200)
                lp = math.fsum(np.abs(c.amplitudes) ** p) ** (1 / p)
                worst = max(worst, abs(luxemburg_norm(M, c).value - lp))
        assert worst <= 1e-9, f"max deviation {worst:.3g}"


def test_ac2_combinatorial_identities(criterion):
    rhos = np.round(np.arange(0, 1.0001, 0.05), 12)
    with criterion("AC2", limit=1):
        for nu in range(61):
            for rho in rhos:
                terms = binomial_terms(nu, rho)
                assert abs(terms.sum() - 1.0) <= 1e-12, (nu, rho)
                tails = np.cumsum(terms[::-1])[::-1]
                for r in range(1, min(nu, 8) + 1):
                    assert tails[r] <= math.comb(nu, r) * (1 - rho) ** r + 1e-12, (nu, r, rho)


def test_ac3_contraction(criterion):
    rng = np.random.default_rng(3)
    with criterion("AC3", limit=10):
        for i in range(200):
            M = THREE_M[i % 3]
            c = random_poly(rng, int(rng.integers(1, 40)), 80)
            op = TaylorAbelPoisson(float(rng.uniform(0, 1)), int(rng.integers(1, 6)))
            assert luxemburg_norm(M, c - op(c)).value <= luxemburg_norm(M, c).value + 1e-9


def test_ac4_bernstein_sandwich(criterion):
    rng = np.random.default_rng(4)
    with criterion("AC4", limit=10):
        for i in range(100):
            M = THREE_M[i % 3]
            n = int(rng.integers(1, 65))
            alpha = (0.5, 1.0, 2.0)[(i // 3) % 3]
            ks = np.arange(-n, n + 1)
            tau = CoeffSeq(ks, rng.standard_normal(ks.size) + 1j * rng.standard_normal(ks.size))
            d = luxemburg_norm(M, power_derivative(tau, alpha)).value
            for h in rng.uniform(0, 2 * np.pi / n, 5):
                mid = luxemburg_norm(M, frac_difference(tau, h, alpha)).value
                assert (math.sin(n * h / 2) / (n / 2)) ** alpha * d <= mid + 1e-10
                assert mid <= h ** alpha * d + 1e-10


def test_ac5_difference_and_modulus_bounds(criterion):
    rng = np.random.default_rng(5)
    alphas = [0.5, 1.0, 1.5, 2.0, 2.5, 3.0]
    with criterion("AC5", limit=10):
        for i in range(500):
            M = THREE_M[i % 3]
            c = random_poly(rng, int(rng.integers(1, 25)), 64, scale=float(rng.uniform(0.1, 5)))
            alpha = alphas[int(rng.integers(len(alphas)))]
            bound = 2 ** math.ceil(alpha) * luxemburg_norm(M, c).value
            h = float(rng.uniform(0, 2 * np.pi))
            assert luxemburg_norm(M, frac_difference(c, h, alpha)).value <= bound * (1 + 1e-12)
            w = modulus(M, c, SmoothnessQuery(alpha, float(rng.uniform(0.01, 2 * np.pi)), 16))
            assert w <= bound * (1 + 1e-12)


def test_ac6_asymptotic_equivalence(criterion):
    with criterion("AC6", limit=30):
        res = run("asymp", ExperimentConfig.from_dict(load("asymp_beta4.json")))
        ratios = {rho: ratio for rho, _, _, ratio in res.rows}
        assert all(r <= 1 for r in ratios.values()), max(ratios.values())
        assert ratios[0.999] >= 0.95, ratios[0.999]


THEOREM4_FAMILIES = [
    ({"family": "power", "params": {"p": 2}}, {"family": "power_decay", "beta": 2, "K": 64}),
    ({"family": "power", "params": {"p": 3.5}}, {"family": "power_decay", "beta": 1.5, "K": 128}),
    ({"family": "power_log", "params": {"p": 2, "q": 1}},
     {"family": "random_sparse", "support": 40, "K": 128, "law": "decaying"}),
    ({"family": "exp_minus_one"}, {"family": "single_harmonic", "k": 9, "re": 0.3, "im": -0.4}),
    ({"family": "power", "params": {"p": 1}},
     {"family": "random_sparse", "support": 12, "K": 48, "law": "uniform_phase"}),
]


def test_ac7_theorem4_sandwich(criterion):
    base = load("theorem4_beta2.json")
    with criterion("AC7", limit=60):
        for orlicz, function in THEOREM4_FAMILIES:
            raw = {**base, "orlicz": orlicz, "function": function, "seed": 7}
            res = run("theorem4", ExperimentConfig.from_dict(raw))
            fine = run("theorem4", ExperimentConfig.from_dict({**raw, "refine": True}))
            assert not res.violations and not fine.violations, res.violations + fine.violations
            for key, sup in res.summary.items():
                assert 0 < sup < math.inf, (function, key, sup)
                assert abs(fine.summary[key] - sup) < 0.05 * sup, (function, key)


def test_ac8_rate_cross_check(criterion):
    with criterion("AC8", limit=60):
        smooth = {}
        for name, cmd in [("prop1_beta2.5.json", "prop1"), ("theorem1_beta2.5_r1.json", "theorem1"),
                          ("theorem1_beta2.5_r2.json", "theorem1")]:
            for key, rep in run(cmd, ExperimentConfig.from_dict(load(name))).reports.items():
                smooth[f"{name}:{key}"] = rep.verdict
        rough = {}
        for name, cmd in [("prop1_rough.json", "prop1"), ("theorem1_rough_r1.json", "theorem1"),
                          ("theorem1_rough_r2.json", "theorem1")]:
            for key, rep in run(cmd, ExperimentConfig.from_dict(load(name))).reports.items():
                rough[f"{name}:{key}"] = rep.verdict
        assert set(smooth.values()) == {"bounded"}, smooth
        assert "unbounded-trend" in rough.values(), rough


def test_ac9_majorant_oracles(criterion):
    mpmath.mp.dps = 20
    with criterion("AC9", limit=5):
        for s in (1, 2, 3):
            for beta in (0.25, 0.5, 1.0, s - 0.5, s, s + 0.5):
                w = Majorant.power(beta)
                # sum_{v>n} v^{-1-beta} = zeta(1+beta, n+1) ~ n^-beta / beta: (B) always holds
                rep = check_B(w, 128)
                assert rep.verdict == "bounded", (s, beta)
                assert rep.points[-1][1] == pytest.approx(float(mpmath.zeta(1 + beta, 129)), rel=1e-7)
                # sum_{v<=n} v^{s-1-beta} = O(n^{s-beta}) iff beta < s
                assert check_Bs(w, s, 256).bounded == (beta < s), (s, beta)


COMMANDS = {
    "norm_l2.json": "norm", "norm_exp.json": "norm",
    "prop1_beta2.5.json": "prop1", "prop1_rough.json": "prop1",
    "theorem1_beta2.5_r1.json": "theorem1", "theorem2_beta3.5_s2.json": "theorem2",
    "asymp_beta4.json": "asymp", "theorem4_sparse.json": "theorem4",
    "majorant_power.json": "majorant", "validate.json": "validate",
}


def test_ac10_determinism(criterion, tmp_path):
    with criterion("AC10"):
        for name, cmd in COMMANDS.items():
            outputs = []
            for i in range(2):
                dest = tmp_path / f"{name}.{i}"
                proc = subprocess.run(
                    [sys.executable, "-m", "orliczapprox", cmd, "--config", os.path.join(CONFIGS, name),
                     "--seed", "20240611", "--out", str(dest)], capture_output=True)
                assert proc.returncode == 0, (name, proc.stderr)
                outputs.append(dest.read_bytes())
            assert outputs[0] == outputs[1], name


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
