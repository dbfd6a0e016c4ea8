"""End-to-end smoke tests for the Python bindings."""

import json
import math

import pytest

import geofol


def test_scenario_registry():
    names = geofol.scenario_names()
    assert len(names) == 8
    assert names[-1] == "all"
    assert "verify-lightlike" in names
    assert "orbit-sweep" in names


def test_exact_flow_closes_after_one_period():
    p0 = [0.3, 0.45, 0.2, 1.7, 0.9]
    q = geofol.exact_flow_w(p0, 2 * math.pi)
    # x, y, z, u return exactly; t advances by one full turn.
    assert list(q[:3]) == p0[:3]
    assert q[3] == pytest.approx(p0[3] + 2 * math.pi, abs=0)
    assert q[4] == p0[4]


def test_exact_flow_rejects_degenerate_start():
    with pytest.raises(Exception):
        geofol.exact_flow_w([0.0, 0.0, 0.0, 0.0, 0.0], 1.0)


def test_metric_signatures():
    assert geofol.signature(geofol.g0_matrix(0.0)) == (3, 2, 0)
    assert geofol.signature(geofol.lightlike_gram()) == (4, 1, 0)


def test_foliation_norm_changes_sign():
    assert geofol.g_xx(0.3) > 0.0
    assert geofol.g_xx(2 * math.pi - 0.3) < 0.0
    assert geofol.g_xx(0.0) == 0.0


def test_certified_parameters_and_plateau():
    P = geofol.typechange_params()
    assert P["eta"] == 1.3
    assert P["zone"] == pytest.approx(P["eta"] / 2, rel=1e-15)
    assert P["u_switch"] < P["zone"] < P["band_end"]
    assert geofol.chi(P["zone"]) == 1.0
    assert geofol.chi(P["band_end"]) == 0.0
    mid = 0.5 * (P["zone"] + P["band_end"])
    assert 0.0 < geofol.chi(mid) < 1.0


def test_scenario_runs_green_and_deterministic():
    raw1 = geofol.run_scenario("riemannize-check", seed=7)
    raw2 = geofol.run_scenario("riemannize-check", seed=7)
    assert raw1 == raw2
    rep = json.loads(raw1)
    assert rep["schema"] == "geofol-report/1"
    assert rep["scenario"] == "riemannize-check"
    assert rep["seed"] == 7
    assert rep["overall"] is True
    assert rep["checks"]
    for check in rep["checks"]:
        assert check["pass"] is True


def test_scenario_writes_report(tmp_path):
    out = tmp_path / "run"
    raw = geofol.run_scenario("riemannize-check", out_dir=str(out))
    on_disk = (out / "report.json").read_text()
    assert on_disk == raw


def test_override_plumbs_through():
    raw = geofol.run_scenario(
        "riemannize-check", overrides={"run.tol_scale": "4.0"}
    )
    rep = json.loads(raw)
    assert rep["tol_scale"] == 4.0


def test_unknown_scenario_raises():
    with pytest.raises(Exception):
        geofol.run_scenario("bogus")


def test_config_reference_lists_keys():
    ref = geofol.config_reference()
    for key in ("tol_scale", "eta_cap", "horizon"):
        assert key in ref
