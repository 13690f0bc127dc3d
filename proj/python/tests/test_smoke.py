import json
import math

import numpy as np
import pytest

import network_elaa as ne


def test_version():
    assert ne.__version__ == "0.1.0"


def test_cluster_selection():
    assert ne.select_cluster(645.0, 3.0, 2) == [64, 65]
    with pytest.raises(ValueError):
        ne.ArrayConfig(ap_spacing=-1.0)


def test_closed_forms():
    assert ne.g_function(2, 1.0, 1.0) == pytest.approx(1.20710678118655, rel=1e-12)
    assert ne.gamma_function(2, 6.25, 1.0) == pytest.approx(0.568965517241379, rel=1e-12)
    assert ne.concavity_threshold(2.0) == pytest.approx(math.sqrt(2.0), rel=1e-12)
    assert ne.classify_g(1.0, 1.0) == "concave"
    assert ne.classify_g(10.0, 1.0) == "monotone_decreasing"
    assert ne.asymptotic_isnr(5.0) == pytest.approx(5.0 / 6.0)
    mean = ne.mean_gain(1, 1.0, 1.0, 5.0)
    sigma = math.sqrt(ne.fluct_variance(1, 1.0, 1.0, 5.0))
    beta = ne.gain_threshold(1e-2, mean, sigma)
    assert ne.outage_probability(beta, mean, sigma) == pytest.approx(1e-2, rel=1e-6)


def test_optimizer_near_field():
    awgn = ne.ChannelParams(rician_k=math.inf)
    assert ne.optimize_cluster(640.0, 3.0, channel=awgn)["best_L"] == 1
    assert ne.optimize_cluster(645.0, 3.0, channel=awgn)["best_L"] == 2
    urllc = ne.optimize_cluster(645.0, 10.0, service=ne.ServiceSpec("URLLC"))
    embb = ne.optimize_cluster(645.0, 10.0)
    assert urllc["best_L"] >= embb["best_L"]
    assert len(embb["objective_curve"]) == 128


def test_monte_carlo_mean_matches_closed_form():
    stat = ne.empirical_gain(0.0, 20.0, 4, trials=20000, seed=3)
    analytic = ne.mean_gain(4, ne.eta(10.0, 20.0), 1.0, 5.0)
    assert abs(stat["mean"] - analytic) < 4.0 * stat["std_error"]
    again = ne.empirical_gain(0.0, 20.0, 4, trials=20000, seed=3, threads=3)
    assert again == stat


def test_coverage_and_map():
    assert ne.coverage_probability(10.0, 0.0) == 1.0
    opt = ne.coverage_probability(20.0, 10.0, quadrature_points=32)
    one = ne.coverage_probability(20.0, 10.0, quadrature_points=32, single_ap=True)
    assert opt >= one
    m = ne.gain_map(630.0, 650.0, 2.0, 6.0, 1.0)
    assert m["objective"].shape == (5, 21)
    assert m["best_L"].dtype == np.int64
    np.testing.assert_allclose(m["objective"][:, :11], m["objective"][:, 10:], rtol=1e-9)


def test_commands(tmp_path):
    cfg = ne.load_config(
        overrides=[
            "theorem.element_counts=[4, 64]",
            "theorem.trials=500",
            f"experiment.out_dir={tmp_path}",
        ]
    )
    columns, rows = ne.run_table("theorem-check", cfg)
    assert columns == ["M", "empirical_isnr", "analytic"]
    assert [r[0] for r in rows] == ["4", "64"]
    csv_path, meta_path = ne.run_command("theorem-check", cfg)
    assert csv_path.read_text().startswith("M,empirical_isnr,analytic\n")
    assert json.loads(meta_path.read_text())["config"]["theorem"]["trials"] == 500
    with pytest.raises(ValueError):
        ne.run_table("frobnicate", cfg)
    with pytest.raises(ValueError):
        ne.load_config(overrides=["array.ap_spacing=-1"])
