import math

import numpy as np
import pytest

import dircorr


def test_measure_names():
    names = dircorr.measure_names()
    assert names[0] == "pcc"
    assert {"rcmi", "nace", "race", "rmi_do"} <= set(names)


def test_independent_joint_has_zero_direct_measures():
    p = np.full((2, 2, 2), 1 / 8)
    vals = dircorr.evaluate_all(p, ["cmi", "rcmi", "nace", "rmi_do"])
    assert all(abs(v) < 1e-12 for v in vals.values())


def test_sparse_special_case():
    p = dircorr.decision_model_joint(q0=0, q1=1, q2=1, q3=1, q4=0)
    assert p.shape == (2, 2, 2)
    assert dircorr.evaluate(p, "nace", "b") == pytest.approx(0.5, abs=1e-12)
    assert dircorr.evaluate(p, "mi_do", "a") == pytest.approx(0.75 * math.log2(3) - 1, abs=1e-9)
    assert dircorr.evaluate(p, "nace", "c") == pytest.approx(0.0, abs=1e-12)


def test_bound_dominates_value():
    p = dircorr.simple_model_joint(0.5, 0.3)
    b = dircorr.achievable_bound(p, "rcmi")
    assert b["couplings_examined"] > 0
    assert dircorr.evaluate(p, "rcmi") <= b["max_value"] + 1e-12


def test_rmi_max_uniform():
    assert dircorr.rmi_max_uniform(2) == pytest.approx(0.558, abs=1e-3)


def test_bootstrap_is_deterministic():
    counts = np.array([[[30, 5], [10, 20]], [[12, 18], [25, 9]]])
    a = dircorr.bootstrap_ci(counts, "rcmi", resamples=200, seed=7)
    b = dircorr.bootstrap_ci(counts, "rcmi", resamples=200, seed=7)
    assert a == b
    assert a["lower"] <= a["point"] <= a["upper"] or a["lower"] <= a["upper"]


def test_berkeley_reference_values():
    r = dircorr.analyze(builtin="berkeley", measures=["rmi", "rcmi", "rmi_do"])
    vals = {row["measure"]: row["value"] for row in r["rows"]}
    assert r["n"] == 4526
    assert vals["rmi"] == pytest.approx(0.061, abs=0.002)
    assert vals["rcmi"] == pytest.approx(0.030, abs=0.002)
    assert vals["rmi_do"] == pytest.approx(0.018, abs=0.002)
    assert r["csv"].startswith("dataset,strategy,n,measure")


def test_errors_carry_kind():
    with pytest.raises(dircorr.DircorrError) as e:
        dircorr.evaluate(np.full((2, 2, 2), 1 / 8), "bogus")
    assert e.value.kind == "InvalidArgument"
    with pytest.raises(dircorr.DircorrError) as e:
        dircorr.evaluate(np.zeros((2, 2, 2)), "rcmi")
    assert e.value.kind == "ZeroTotal"
