"""Smoke tests for the alknot python module (built extension on PYTHONPATH)."""

import math

import pytest

alknot = pytest.importorskip("alknot")


def test_fd_adjust_endpoints():
    out = alknot.fd_adjust([5.0, 5.0, 5.0], "constant")
    assert out == [0.0, 0.0, 0.0]
    trend = alknot.fd_adjust([1.0, 2.0, 3.0], "linear_trend")
    assert trend[-1] == 0.0
    assert trend[0] == pytest.approx(-2.0 / 3.0)


def test_tau_on_random_walk():
    y = alknot.gen_arma_near_ur(T=120, c=0.0, seed=42)
    res = alknot.tau(y, p=0, detrending="constant")
    assert res["statistic"] >= 0.0
    assert res["sigma2"] > 0.0
    # scale invariance
    res2 = alknot.tau([2.0 * v for v in y], p=0, detrending="constant")
    assert res2["statistic"] == pytest.approx(res["statistic"], rel=1e-12)


def test_tau_ie_records_j():
    y = alknot.gen_arma_near_ur(T=100, c=0.0, seed=7)
    res = alknot.tau_ie(y, p=1, detrending="constant", seed=3)
    assert res["j_value"] > 0.0
    # J = 1 would reproduce tau exactly; here just check determinism
    res_b = alknot.tau_ie(y, p=1, detrending="constant", seed=3)
    assert res_b["statistic"] == res["statistic"]


def test_null_simulation_and_p_value():
    null = alknot.simulate_null_finite("tau", "constant", 60, 800, seed=5, threads=2)
    assert len(null["draws"]) == 800
    assert all(d >= 0.0 for d in null["draws"])
    p = alknot.p_value(0.0, null)
    assert p == pytest.approx(1.0)
    cvs = alknot.critical_values(null, [0.05, 0.10])
    assert cvs[0][1] >= cvs[1][1]


def test_classical_tests():
    y = alknot.gen_adf_form(T=200, rho_star=-0.5, delta_star=[], seed=11)
    adf = alknot.adf_gls(y, "constant", k=0)
    mz = alknot.mz_t(y, "constant", k=0)
    assert adf["statistic"] < 0.0
    assert mz["statistic"] < 0.0
    j = alknot.j_alpha_test(y, "constant", seed=2)
    assert j["statistic"] > 0.0


def test_spacing():
    y = alknot.gen_arma_near_ur(T=100, c=0.0, seed=9)
    res = alknot.spacing_pvalue(y, p=2, detrending="none", variant="adaptive")
    assert 0.0 <= res["p_value"] <= 1.0
    assert res["step"] >= 1


def test_solution_path_structure():
    y = alknot.gen_arma_near_ur(T=80, c=0.0, seed=13)
    path = alknot.solution_path(y, p=3, detrending="none", mode="lasso")
    knots = path["knots"]
    assert len(knots) >= 4
    assert all(knots[i] > knots[i + 1] for i in range(len(knots) - 1))
    activations = [e for e in path["events"] if e["activate"]]
    assert len(activations) >= 4


def test_analyze_end_to_end():
    y = alknot.gen_adf_form(T=80, rho_star=-0.6, delta_star=[], seed=21)
    rep = alknot.analyze(y, detrending="constant", tests=["tau", "adf_gls"],
                         alpha=0.05, seed=4, null_replications=400)
    assert rep["T"] == 80
    assert len(rep["tests"]) == 2
    for t in rep["tests"]:
        assert 0.0 <= t["p_value"] <= 1.0
        assert t["reject"] == (t["p_value"] < 0.05)
    # determinism
    rep_b = alknot.analyze(y, detrending="constant", tests=["tau", "adf_gls"],
                           alpha=0.05, seed=4, null_replications=400)
    assert rep_b["tests"][0]["p_value"] == rep["tests"][0]["p_value"]


def test_errors_surface_as_exceptions():
    with pytest.raises(Exception):
        alknot.fd_adjust([1.0], "constant")
    with pytest.raises(Exception):
        alknot.analyze([1.0] * 10, detrending="constant")
