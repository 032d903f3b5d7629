"""Smoke tests for the python surface of the C++ core."""

import numpy as np
import pytest

import cnb


def test_commutator_matches_numpy():
    rng = np.random.default_rng(1)
    x = rng.standard_normal((4, 4))
    y = rng.standard_normal((4, 4))
    np.testing.assert_allclose(cnb.commutator(x, y), x @ y - y @ x, atol=1e-13)


def test_elementary_and_norms():
    e12 = cnb.elementary(2, 1, 2)
    assert e12[0, 1] == 1.0 and e12.sum() == 1.0
    assert cnb.frobenius_norm_sq(np.diag([2.0, 1.0])) == 5.0
    assert cnb.offdiag_max_abs(np.array([[5.0, 1.0], [-3.0, 5.0]])) == 3.0


def test_bw_inequality_on_random_pairs():
    rng = np.random.default_rng(7)
    for _ in range(200):
        x = rng.standard_normal((5, 5))
        y = rng.standard_normal((5, 5))
        lhs = cnb.frobenius_norm_sq(cnb.commutator(x, y))
        assert lhs <= cnb.bw_bound(x, y) * (1 + 1e-9)
        assert cnb.kyfan_bound(x, y) <= cnb.bw_bound(x, y) * (1 + 1e-12)


def test_svd_reconstruction():
    rng = np.random.default_rng(11)
    x = rng.standard_normal((6, 6))
    q1, sigma, q2 = cnb.svd(x)
    np.testing.assert_allclose(q1 @ np.diag(sigma) @ q2, x, atol=1e-12)
    assert sorted(sigma, reverse=True) == list(sigma)


def test_spectrum_report_closed_form():
    report = cnb.spectrum_report([2.0, 1.0])
    assert report["computed"] == [8.0, 5.0, 5.0, 2.0, 0.0, 0.0, 0.0, 0.0]
    assert report["max_eigenvector_residual"] <= 1e-10
    cert = report["second_pair_certification"]
    assert cert["derived_residual"] <= 1e-12
    assert cert["mirrored_residual"] >= 0.1
    assert report["multiplicity"][0]["count"] == 1
    assert report["multiplicity"][1]["count"] == 2


def test_genericity_guard():
    assert not cnb.check_genericity([1.0, 1.0])["is_generic"]
    with pytest.raises(ValueError):
        cnb.closed_form_spectrum([1.0, 1.0])
    nudged = cnb.perturb_to_generic([1.0, 1.0], seed=3)
    assert cnb.check_genericity(nudged)["is_generic"]


def test_evaluate_all_tightest_family():
    report = cnb.evaluate_all(np.diag([3.0, 1.0]), cnb.elementary(2, 1, 2))
    assert report["lhs"] == 4.0
    assert report["tightest"] == "cdck"
    values = {b["name"]: b["value"] for b in report["bounds"] if b["applicable"]}
    assert values == {"bw": 20.0, "kyfan": pytest.approx(20.0), "cdck": pytest.approx(4.0),
                      "infnorm": 30.0}


def test_find_extremal_equality_pair():
    result = cnb.find_extremal(cnb.elementary(2, 1, 2))
    assert result["lambda_max"] == pytest.approx(2.0, abs=1e-10)
    assert result["ratio_bw"] == pytest.approx(1.0, abs=1e-10)
    ratio, _ = cnb.certify_equality_pair(cnb.elementary(2, 1, 2))
    assert ratio == pytest.approx(1.0, abs=1e-10)


def test_change_of_variables_identity():
    rng = np.random.default_rng(23)
    x = rng.standard_normal((4, 4))
    y = rng.standard_normal((4, 4))
    sigma, b, c = cnb.change_of_variables(x, y)
    lhs = cnb.frobenius_norm_sq(cnb.commutator(x, y))
    assert cnb.block_commutator_norm_sq(sigma, b, c) == pytest.approx(lhs, rel=1e-10)


def test_campaign_is_deterministic_and_clean():
    first = cnb.run_campaign(3, "gaussian", "gaussian", 200, seed=5, checks="bw,kyfan,cov")
    second = cnb.run_campaign(3, "gaussian", "gaussian", 200, seed=5, checks="bw,kyfan,cov")
    assert first == second
    assert first["passed"] is True
    assert first["checks"]["bw"]["violations"] == 0
    assert first["checks"]["bw"]["max_ratio"] <= 1 + 1e-9


def test_draw_matrix_kinds():
    s = cnb.draw_matrix(4, "symmetric", seed=9, index=2)
    np.testing.assert_array_equal(s, s.T)
    d = cnb.draw_matrix(4, "diagonal", seed=9, index=0)
    assert np.all(d[~np.eye(4, dtype=bool)] == 0.0)


def test_input_validation():
    with pytest.raises(ValueError):
        cnb.commutator(np.zeros((2, 2)), np.zeros((3, 3)))
    with pytest.raises(ValueError):
        cnb.cdck_bound(cnb.elementary(2, 1, 2), np.zeros((2, 2)))
    with pytest.raises(ValueError):
        cnb.frobenius_norm_sq(np.zeros((2, 3)))
