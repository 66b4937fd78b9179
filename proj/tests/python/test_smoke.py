"""Smoke tests for the Python bindings: exact spot values and one sampled
check per family. The heavy verification lives in the C++ suites."""

import math

import pytest

import rootbound


def test_certify_halley_spot_values():
    cert = rootbound.certify("halley", 2, order=64)
    assert cert["ell"] == 3
    assert cert["c"][3] == "1/16"
    assert cert["b"][3] == "15/16"
    assert all(cert["checks"].values())


def test_certify_newton_rational_p():
    cert = rootbound.certify("newton", "5/2", order=32)
    assert cert["ell"] == 2
    assert all(cert["checks"].values())


def test_certify_weights_refusal():
    with pytest.raises(ValueError, match="non-increasing"):
        rootbound.certify_weights("bad", ["1", "3/2", "1"], 2)


def test_weights_and_series():
    assert rootbound.weights("halley", 2, 3) == "13/16"
    assert rootbound.map_series("f", 2, order=3) == ["0", "0", "1/4", "1/4"]
    assert rootbound.map_series("g", 2, order=3, route="closed") == ["0", "0", "0", "1/16"]
    assert rootbound.binomial_root_series(2, order=4) == [
        "1",
        "-1/2",
        "-1/8",
        "-1/16",
        "-5/128",
    ]
    assert rootbound.iterate_series("halley", 2, k=1, order=3) == ["1", "-1/2", "-1/8", "-1/32"]


def test_residual_map_values():
    assert abs(rootbound.residual_map("f", 2, -1.0) - 1.0 / 9.0) < 1e-14
    assert abs(rootbound.residual_map("g", 2, -1.0) + 1.0 / 49.0) < 1e-14


def test_prefix_agreement():
    assert rootbound.prefix_agreement("newton", 2, k=1, order=16) == 2
    assert rootbound.prefix_agreement("halley", 2, k=1, order=16) == 3
    assert rootbound.prefix_agreement("halley", 3, k=2, order=32) >= 9


def test_sampled_contraction():
    report = rootbound.check_map_contraction("g", 2, radii=8, angles=16, random_count=64)
    assert report["passed"]
    assert report["max_log_ratio"] < 0.0
    assert report["violations"] == []


def test_run_iteration_and_order():
    trace = rootbound.run_iteration("newton", 2, complex(-1.0, 0.0), k_max=1)
    assert abs(trace["steps"][1]["residual"]["re"] - 1.0 / 9.0) < 1e-14

    est = rootbound.estimate_convergence_order("halley", 2, complex(0.5, 0.0), k_max=3)
    assert len(est["ratios"]) == 3
    assert math.isclose(est["ratios"][2], 3.1915, rel_tol=1e-3)


def test_sample_disk_deterministic():
    first = rootbound.sample_disk(radii=4, angles=8, random_count=32, seed=7)
    second = rootbound.sample_disk(radii=4, angles=8, random_count=32, seed=7)
    assert first == second
    assert all(abs(z) <= 1.0 + 1e-15 for z in first)
