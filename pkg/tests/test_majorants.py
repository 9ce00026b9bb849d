import csv
import io
import json
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from orliczapprox import (Majorant, MajorantConditionError, check_B, check_Bs, rate_fit,
                          remark1_check, validate_majorant)


def harmonic_log_table():
    t = np.logspace(-30, 0, 400)
    return Majorant.from_table(list(zip(t, 1 / np.log(np.e / t))))


# -- rate_fit -----------------------------------------------------------------

def test_exact_power_law():
    x = np.logspace(0, 3, 16)
    rep = rate_fit(list(zip(x, 3 * x ** -2.0)), lambda x: x ** -2.0)
    assert rep.verdict == "bounded"
    assert rep.sup_ratio == pytest.approx(3.0)
    assert rep.fitted_order == pytest.approx(-2.0)


def test_ratio_tending_to_zero_is_bounded():
    # y = const against g = 1/x as x -> 0+: ratio const*x -> 0
    x = np.logspace(0, -6, 16)
    rep = rate_fit(list(zip(x, np.full(16, 5.0))), lambda x: 1 / x)
    assert rep.verdict == "bounded"


def test_ratio_growing_with_x_is_flagged():
    x = np.logspace(0, 6, 16)
    rep = rate_fit(list(zip(x, np.full(16, 5.0))), lambda x: 1 / x)
    assert rep.verdict == "unbounded-trend"


def test_logarithmic_growth_is_flagged():
    x = np.logspace(1, 6, 20)
    rep = rate_fit(list(zip(x, np.log(x) / x)), lambda x: 1 / x)
    assert rep.verdict == "unbounded-trend"


@given(st.floats(-4, 4), st.floats(0.1, 10))
def test_fitted_order_recovered(order, scale):
    x = np.logspace(0, 4, 16)
    rep = rate_fit(list(zip(x, scale * x ** order)), lambda x: x ** order)
    assert abs(rep.fitted_order - order) <= 0.05
    assert rep.sup_ratio >= rep.tail_ratio >= 0


def test_rate_fit_contract():
    x = np.arange(1, 8, dtype=float)
    with pytest.raises(ValueError):
        rate_fit(list(zip(x, x)), lambda x: x)
    x = np.array([1, 2, 3, 5, 4, 6, 7, 8], dtype=float)
    with pytest.raises(ValueError):
        rate_fit(list(zip(x, x)), lambda x: x)
    x = np.arange(1, 9, dtype=float)
    with pytest.raises(ValueError):
        rate_fit(list(zip(x, -x)), lambda x: x)


def test_nonfinite_is_inconclusive():
    x = np.arange(1, 11, dtype=float)
    y = x.copy()
    y[4] = np.nan
    assert rate_fit(list(zip(x, y)), lambda x: x).verdict == "inconclusive"


def test_zero_values_are_bounded():
    x = np.arange(1, 11, dtype=float)
    rep = rate_fit(list(zip(x, np.zeros(10))), lambda x: x)
    assert rep.verdict == "bounded" and rep.sup_ratio == 0


def test_report_exports():
    x = np.logspace(0, 2, 10)
    rep = rate_fit(list(zip(x, 2 * x)), x, label="x")
    obj = json.loads(json.dumps(rep.to_json()))
    assert obj["verdict"] == "bounded" and len(obj["points"]) == 10
    rows = list(csv.reader(io.StringIO(rep.to_csv())))
    assert rows[0] == ["x", "y", "g", "ratio"] and len(rows) == 11
    assert float(rows[1][3]) == pytest.approx(2.0)


# -- (B) ----------------------------------------------------------------------

@pytest.mark.parametrize("beta", [0.25, 0.5, 1.0, 1.5, 2.0, 3.0])
def test_check_B_power_matches_hurwitz_zeta(beta):
    mpmath.mp.dps = 30
    n_max = 128
    rep = check_B(Majorant.power(beta), n_max)
    assert rep.verdict == "bounded"
    for n in (1, 2, 10, 64, 128):
        want = float(mpmath.zeta(1 + beta, n + 1))
        assert rep.points[n - 1][1] == pytest.approx(want, rel=1e-7)
        assert rep.ratios[n - 1] == pytest.approx(n ** beta * want, rel=1e-7)
    # R(n) -> 1/beta
    assert rep.ratios[-1] == pytest.approx(1 / beta, rel=0.02)


@pytest.mark.parametrize("beta,gamma", [(0.5, 1.0), (1.0, -0.5), (0.75, -2.0)])
def test_check_B_power_log_against_series(beta, gamma):
    mpmath.mp.dps = 20
    w = Majorant.power_log(beta, gamma)
    rep = check_B(w, 64)
    for n in (1, 8, 64):
        want = mpmath.nsum(lambda v: v ** (-1 - beta) * mpmath.log(mpmath.e * v) ** gamma,
                           [n + 1, mpmath.inf], method="euler-maclaurin")
        assert rep.points[n - 1][1] == pytest.approx(float(want), rel=1e-6)


def test_check_B_table_reproduces_power():
    t = np.logspace(-30, 0, 200)
    rep_t = check_B(Majorant.from_table(list(zip(t, t ** 0.5))), 64)
    rep_p = check_B(Majorant.power(0.5), 64)
    assert np.allclose([p[1] for p in rep_t.points], [p[1] for p in rep_p.points], rtol=1e-9)
    assert rep_t.notes


def test_check_B_harmonic_divergence():
    rep = check_B(harmonic_log_table(), 128)
    assert rep.verdict == "unbounded-trend"


def test_check_B_needs_long_explicit_sum():
    with pytest.raises(ValueError):
        check_B(Majorant.power(1), 100, V=999)


# -- (B_s) --------------------------------------------------------------------

@pytest.mark.parametrize("s", [1, 2, 3])
def test_check_Bs_power_oracle(s):
    for beta in (0.25, 0.5, 1.0, s - 0.5, s, s + 0.5):
        rep = check_Bs(Majorant.power(beta), s, 256)
        assert rep.bounded == (beta < s), (s, beta)
        direct = [math.fsum(v ** (s - 1 - beta) for v in range(1, m + 1)) for m in (1, 17, 256)]
        got = [rep.points[m - 1][1] for m in (1, 17, 256)]
        assert np.allclose(got, direct, rtol=1e-12)
        if beta < s:
            assert rep.ratios[-1] == pytest.approx(1 / (s - beta), rel=0.15)


def test_check_Bs_example():
    assert check_Bs(Majorant.power(0.5), 1, 256).verdict == "bounded"
    with pytest.raises(ValueError):
        check_Bs(Majorant.power(0.5), 0, 10)


# -- remark1_check ------------------------------------------------------------

RHOS = [0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.98, 0.99, 0.995, 0.999]


def test_remark1_passes_below_s():
    rep = remark1_check(Majorant.power(0.5), 1, 2, RHOS)
    assert rep.verdict == "bounded"


def test_remark1_boundary_case_without_gate():
    rep = remark1_check(Majorant.power(2), 2, 3, RHOS, gate=False)
    assert rep.verdict == "bounded"
    assert np.allclose(rep.ratios, 1.0)


def test_remark1_gate_rejects():
    with pytest.raises(MajorantConditionError) as info:
        remark1_check(Majorant.power(2.5), 2, 3, RHOS)
    assert info.value.report.verdict == "unbounded-trend"
    with pytest.raises(ValueError):
        remark1_check(Majorant.power(0.5), 2, 1, RHOS)


# -- Majorant -----------------------------------------------------------------

def test_majorant_values():
    assert Majorant.power(0.5)(0.25) == 0.5
    assert Majorant.power_log(1, 2)(1.0) == 1.0
    assert Majorant.power_log(1, 2)(0.0) == 0.0
    w = Majorant.from_table([(0.01, 0.1), (1.0, 1.0)])
    assert w(0.1) == pytest.approx(0.1 ** 0.5)
    assert w(1e-4) == pytest.approx(1e-2)  # first-segment power law continued
    assert w(0.0) == 0.0


def test_majorant_validation():
    assert validate_majorant(Majorant.power(1)) == []
    assert validate_majorant(Majorant.power_log(1, -1)) == []
    # t^0.5 ln(e/t) decreases on (1/e, 1]
    assert any(v.startswith("2)") for v in validate_majorant(Majorant.power_log(0.5, 1)))
    bad = validate_majorant(harmonic_log_table())
    assert len(bad) == 1 and bad[0].startswith("4)")
    dip = Majorant.from_table([(1e-6, 1e-7), (0.5, 0.9), (0.6, 0.5), (1.0, 1.0)])
    assert any(v.startswith("2)") for v in validate_majorant(dip))
    with pytest.raises(ValueError):
        Majorant.power(0)
    with pytest.raises(ValueError):
        Majorant.from_table([(0.5, 1.0)])


@pytest.mark.parametrize("w", [Majorant.power(0.7), Majorant.power_log(1, -1),
                               Majorant.from_table([(0.001, 0.01), (1, 1)])])
def test_majorant_json(w):
    back = Majorant.from_json(json.loads(json.dumps(w.to_json())))
    assert back.to_json() == w.to_json()
