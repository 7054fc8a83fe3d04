import math

import pytest

import bohrlab


def test_mobius_radius():
    est = bohrlab.function_radius(bohrlab.mobius_series(0.5, 40), tol=1e-7)
    assert est.lower <= 0.5 <= est.upper + 1e-7
    assert est.kind == "per_function"


def test_series_round_trip():
    f = bohrlab.Series(2, 3, [([1, 0], 1.0), ([1, 1], 2 - 1j)])
    assert f.coefficient([1, 1]) == 2 - 1j
    assert f([0.5, 0.5]) == pytest.approx(0.5 + 0.25 * (2 - 1j))
    g = bohrlab.Series.from_text(f.to_text())
    assert g.terms() == f.terms()


def test_norms_and_geometry():
    s = bohrlab.Series(2, 1, [([1, 0], 1.0), ([0, 1], 1.0)])
    assert bohrlab.r2_norm(s, "lp:2:2", 1.0) == pytest.approx(2.0)
    assert bohrlab.r1_norm(s, "lp:2:2", 1.0) == pytest.approx(math.sqrt(2.0), rel=1e-7)
    assert bohrlab.monomial_sup("lp:1:2", [1, 1], 1.0) == pytest.approx(0.25)
    assert bohrlab.hull_distance("strip:0,0,1,0,1", 0.3 + 5j) == pytest.approx(0.7)
    with pytest.raises(ValueError):
        bohrlab.hull_distance("disk:0,0,1", 2.0)


def test_sweep_and_witness():
    est = bohrlab.mobius_infimum("geometric:100")
    assert 1 / 3 - 1e-6 <= est.upper <= 1 / 3 + 2e-3
    w2 = bohrlab.witness_upper_bound_l1(2, "geometric:60")
    assert 0.1835 <= w2.upper <= 0.30


def test_run_experiment():
    rec = bohrlab.run_experiment("probe", domain="lp:1:2", mode="r2", count=20, seed=3)
    again = bohrlab.run_experiment("probe", domain="lp:1:2", mode="r2", count=20, seed=3)
    assert rec["passed"]
    assert rec["payload"] == again["payload"]
    assert rec["payload"]["items"][0]["violations"] == 0
