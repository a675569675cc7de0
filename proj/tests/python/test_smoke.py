import json
import math

import pytest

import _hyperips as hip

PAIR_MODEL = json.dumps(
    {"kind": "si", "qbar": 0.8, "scaling": "unit", "graph": {"kind": "path", "n": 2}}
)
HALF_LAW = json.dumps({"kind": "iid", "probs": [0.5, 0.5]})


def test_version_string():
    assert hip.__version__.count(".") == 2


def test_graph_and_model_serialization():
    text = hip.generate_graph(json.dumps({"kind": "complete", "n": 4}))
    assert text.startswith("n 4 directed 0")
    rules = hip.build_model(PAIR_MODEL)
    assert "states: S,I" in rules


def test_exact_matches_closed_form():
    # one susceptible vertex facing one infected vertex at rate 0.8
    law = json.dumps({"kind": "point", "state": "S", "overrides": {"1": "I"}})
    res = hip.exact_marginals(PAIR_MODEL, [1.0], law)
    i_state = res["states"].index("I")
    expected = 1.0 - math.exp(-0.8)
    assert abs(res["values"][0][0][i_state] - expected) < 1e-9


def test_simulation_agrees_with_mean_field_at_t0():
    sim = hip.simulate_marginals(PAIR_MODEL, [0.0], HALF_LAW, replicas=4000, seed=3)
    mf = hip.mean_field(PAIR_MODEL, [0.0], HALF_LAW)
    assert mf["max_simplex_drift"] <= 1e-8
    for i in range(2):
        for s in range(2):
            assert abs(sim["values"][0][i][s] - mf["values"][0][i][s]) < 0.05


def test_backward_estimators_report_uncertainty():
    col = hip.collision_prob(PAIR_MODEL, 0, 1, 0.5, replicas=2000, seed=1)
    assert 0.0 <= col["value"] <= 1.0
    assert col["truncation_fraction"] == 0.0
    ghost = hip.ghost_prob(PAIR_MODEL, 0, 0.5, replicas=2000, seed=1)
    assert 0.0 <= ghost["value"] <= 1.0


def test_bound_reports_names():
    reports = hip.bound_reports(PAIR_MODEL, 1.0, m_size=2)
    names = {r["name"] for r in reports}
    assert "collision_upper" in names
    assert "linf_upper" in names
    assert "concentration_upper" in names


def test_experiment_round_trip(tmp_path):
    spec = {
        "model": {"kind": "si", "graph": {"kind": "path", "n": 3}},
        "law": {"kind": "iid", "probs": [0.5, 0.5]},
        "quantities": ["nimfa"],
        "t_grid": [0.5],
    }
    files = hip.run_experiment(json.dumps(spec), str(tmp_path / "run"))
    assert files == ["nimfa.csv", "manifest.json"]
    manifest = json.loads((tmp_path / "run" / "manifest.json").read_text())
    assert manifest["outputs"] == ["nimfa.csv"]


def test_spec_errors_surface_as_engine_errors(tmp_path):
    with pytest.raises(hip.EngineError):
        hip.run_experiment("{}", str(tmp_path / "bad"))
    with pytest.raises(hip.EngineError):
        hip.generate_graph(json.dumps({"kind": "moebius", "n": 3}))
