import json
import math

import numpy as np
import pytest

import orderstat as ost


def test_marginal_closed_forms():
    lap = ost.Marginal.laplace(1.0)
    assert lap.survival_abs(math.log(10.0)) == pytest.approx(0.1, abs=1e-12)
    assert lap.truncated_abs_mean(0.0) == pytest.approx(1.0)
    g = ost.Marginal.gaussian(1.0)
    assert g.abs_mean() == pytest.approx(math.sqrt(2.0 / math.pi))
    assert g.moment_p(2.0) == pytest.approx(1.0)


def test_thresholds_match_closed_forms():
    model = ost.VectorModel.independent_product(ost.Marginal.laplace(1.0), 100)
    r = ost.tstar_threshold(model, 10.0)
    assert r.value == pytest.approx(math.log(10.0), abs=1e-8)
    t = ost.t_threshold(model, 10.0)
    assert t.value == pytest.approx(2.6253244, abs=1e-5)
    assert ost.tstar_threshold(model, 5.0).value >= r.value


def test_sampling_shape_and_determinism():
    model = ost.VectorModel.uniform_cube(8, math.sqrt(3.0))
    a = model.sample(100, seed=7)
    b = model.sample(100, seed=7)
    assert a.shape == (100, 8)
    np.testing.assert_array_equal(a, b)
    c = model.sample(100, seed=8)
    assert not np.array_equal(a, c)
    assert np.abs(a).max() <= math.sqrt(3.0)


def test_selection_against_numpy():
    rng = np.random.default_rng(0)
    x = rng.normal(size=37)
    mods = np.sort(np.abs(x))[::-1]
    for k in (1, 5, 37):
        assert ost.kth_max_abs(x, k) == pytest.approx(mods[k - 1])
        assert ost.topk_abs_sum(x, k) == pytest.approx(mods[:k].sum())


def test_estimate_equal_coordinate_model():
    model = ost.VectorModel.fully_correlated_gaussian(16)
    est = ost.estimate_mean(model, "topk:5", 50000, seed=3)
    expected = 5.0 * math.sqrt(2.0 / math.pi)
    assert abs(est.mean - expected) <= 3.0 * est.stderr
    med = ost.estimate_median(model, "kmax:2", 20000, 1, seed=5)
    assert med.ci95[0] <= 0.6744897501960817 <= med.ci95[1]


def test_model_from_json():
    cfg = {
        "kind": "independent_product",
        "n": 4,
        "params": {"marginal": {"family": "gaussian", "params": {"sigma": 2.0}}},
        "weights": [1.0, 0.5, 1.0, 1.0],
    }
    model = ost.model_from_json(json.dumps(cfg))
    assert model.n == 4
    assert model.marginal_of(1).variance() == pytest.approx(1.0)


def test_suite_and_lemmas():
    lemmas = ost.run_lemma_grid()
    assert len(lemmas) > 40
    assert all(r.verdict != "fail" for r in lemmas)
    reports = ost.run_suite(suite="prop11", ns=[16], samples=5000, seed=7)
    assert reports
    assert all(r.verdict == "pass" for r in reports)


def test_identity_checks():
    model = ost.VectorModel.independent_product(ost.Marginal.laplace(1.0), 12)
    reports = ost.byparts_identity_check(model, 3, 1.0, 5000, seed=1)
    assert [r.verdict for r in reports] == ["pass", "pass"]
