from __future__ import annotations

import json
import math

import pytest

from entvol.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_bipartite_source_json(capsys):
    code, out, _ = run(capsys, "bipartite", "source",
                       "--schmidt", "0.4,0.3,0.2,0.1", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["E_s"] == pytest.approx(0.904, abs=5e-4)


def test_bipartite_accessible_json(capsys):
    code, out, _ = run(capsys, "bipartite", "accessible",
                       "--schmidt", "0.4,0.3,0.2,0.1", "--json")
    payload = json.loads(out)
    assert code == 0
    assert payload["E_a"] == pytest.approx(87 / 125, abs=1e-9)
    assert payload["vertices"] == 8


def test_bipartite_convert(capsys):
    code, out, _ = run(capsys, "bipartite", "convert",
                       "--from", "0.6,0.4", "--to", "0.7,0.3", "--json")
    assert code == 0
    assert json.loads(out)["convertible"] is True
    code, out, _ = run(capsys, "bipartite", "convert",
                       "--from", "0.7,0.3", "--to", "0.6,0.4", "--json")
    assert json.loads(out)["convertible"] is False


def test_bipartite_sweep_matches_closed_form(capsys):
    code, out, _ = run(capsys, "bipartite", "sweep",
                       "--from-schmidt", "0.5,0.5", "--to-schmidt", "1,0",
                       "--steps", "6")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].split(",")[0] == "step"
    for line in lines[1:]:
        cells = line.split(",")
        lam1 = float(cells[1])
        e_s = float(cells[5])
        assert e_s == pytest.approx(2 * (1 - lam1), abs=1e-10)


def test_sweep_deterministic(capsys):
    args = ("bipartite", "sweep", "--from-schmidt", "0.6,0.25,0.15",
            "--to-schmidt", "0.4,0.35,0.25", "--steps", "5")
    _, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args)
    assert out1 == out2
    # accessible volume stays continuous across the lambda_1 = 1/2 boundary
    vals = [float(line.split(",")[5]) for line in out1.strip().splitlines()[1:]]
    jumps = [abs(b - a) for a, b in zip(vals, vals[1:])]
    assert max(jumps) < 0.2


def test_fourqubit_measures_seed(capsys):
    code, out, _ = run(capsys, "fourqubit", "measures",
                       "--gammas", "0,0,0;0,0,0;0,0,0;0,0,0", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["E_a"] == 1.0
    assert payload["V_a"] == pytest.approx(29 * math.pi / 12, rel=1e-11)
    assert payload["V_a_symbolic"] == "29*pi/12"


def test_fourqubit_classify_and_convert(capsys):
    code, out, _ = run(capsys, "fourqubit", "classify",
                       "--gammas", "0.15,0.2,0.1;0.3,0,0;0.1,0,0;0,0,0", "--json")
    assert code == 0
    assert json.loads(out)["tag"] == "general_plus_axes"
    code, out, _ = run(capsys, "fourqubit", "convert",
                       "--from-gammas", "0.15,0.2,0.1;0.3,0,0;0.1,0,0;0,0,0",
                       "--to-gammas", "0.15,0.3,0.15;0.3,0,0;0.1,0,0;0,0,0",
                       "--json")
    payload = json.loads(out)
    assert payload["convertible"] is True and payload["row"] == "transverse_scaling"


def test_fourqubit_witness(capsys):
    code, out, _ = run(capsys, "fourqubit", "witness",
                       "--from-gammas", "0,0.3,0;0.1,0,0;0,0,0;0,0,0",
                       "--to-gammas", "0,0.42,0;0.33,0,0;0,0,0;0,0,0",
                       "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["completeness_residual"] <= 1e-12
    assert payload["outcome_mismatch"] <= 1e-9
    assert sum(payload["probabilities"]) == pytest.approx(1.0, abs=1e-9)


def test_fourqubit_state_json_roundtrip(tmp_path, capsys):
    code, out, _ = run(capsys, "fourqubit", "measures",
                       "--gammas", "0.23,0.13,0.15;0,0,0;0,0,0;0,0,0",
                       "--mc-samples", "50000", "--json")
    first = json.loads(out)
    # the same state via a JSON payload file gives the identical report
    from entvol.cli import _default_seed_params
    from entvol.fourqubit import FourQubitForm
    import numpy as np
    payload = FourQubitForm(_default_seed_params(),
                            np.array([[0.23, 0.13, 0.15], [0, 0, 0], [0, 0, 0], [0, 0, 0]])).to_json()
    path = tmp_path / "state.json"
    path.write_text(json.dumps(payload), encoding="utf-8")
    code, out, _ = run(capsys, "fourqubit", "measures", "--state", str(path),
                       "--mc-samples", "50000", "--json")
    second = json.loads(out)
    assert first == second


def test_polytope_subcommands(tmp_path, capsys):
    hrep = {"A": [[1, 0], [0, 1], [-1, 0], [0, -1]], "b": [0, 0, 1, 1]}
    path = tmp_path / "square.json"
    path.write_text(json.dumps(hrep), encoding="utf-8")
    code, out, _ = run(capsys, "polytope", "vertices", "--input", str(path), "--json")
    assert code == 0 and json.loads(out)["count"] == 4
    code, out, _ = run(capsys, "polytope", "volume", "--input", str(path), "--json")
    payload = json.loads(out)
    assert payload["volume"] == pytest.approx(1.0)
    assert payload["simple"] is True
    assert payload["brion_volume"] == pytest.approx(1.0)


def test_oracle_subcommands(capsys):
    code, out, _ = run(capsys, "oracle", "source", "--schmidt", "0.5,0.3,0.2",
                       "--samples", "50000", "--seed", "3")
    assert code == 0
    payload = json.loads(out)
    assert abs(payload["estimate"] - payload["closed_form"]) <= 4 * payload["stderr"]
    code, out, _ = run(capsys, "oracle", "region", "--region", "half-ball",
                       "--samples", "50000", "--seed", "3")
    payload = json.loads(out)
    assert payload["estimate"] == pytest.approx(math.pi / 12, abs=5 * payload["stderr"])


def test_mc_seed_env_default(capsys, monkeypatch):
    args = ("fourqubit", "measures", "--gammas",
            "0.23,0.13,0.15;0,0,0;0,0,0;0,0,0", "--mc-samples", "20000", "--json")
    monkeypatch.setenv("ENTVOL_MC_SEED", "5")
    _, out_a, _ = run(capsys, *args)
    _, out_b, _ = run(capsys, *args)
    assert out_a == out_b
    monkeypatch.setenv("ENTVOL_MC_SEED", "6")
    _, out_c, _ = run(capsys, *args)
    assert json.loads(out_a)["V_a"] != json.loads(out_c)["V_a"]


def test_domain_error_exit_code(capsys):
    code, out, _ = run(capsys, "bipartite", "source", "--schmidt", "0,0", "--json")
    assert code == 2
    assert json.loads(out)["error"] == "schmidt.ZeroSum"
    code, out, _ = run(capsys, "bipartite", "source", "--schmidt", " -0.5,1.5")
    assert code == 2
    assert json.loads(out)["error"] == "schmidt.NegativeComponent"


def test_usage_error_exit_code(capsys):
    code, _, err = run(capsys, "bipartite", "source")  # missing --schmidt
    assert code == 64
