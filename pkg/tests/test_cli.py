import json

import pytest

import cli


@pytest.fixture
def run(clean_env, capsys):
    def invoke(*argv):
        code = cli.main(list(argv))
        out, err = capsys.readouterr()
        lines = [line for line in out.splitlines() if line.strip()]
        assert len(lines) == 1, out
        return code, json.loads(lines[0]), err
    return invoke


def test_derive(run):
    code, doc, _ = run("derive", "--expr", "x^3", "--var", "x", "--at", "x=2")
    assert code == 0
    assert doc == {"value": "12", "order": 1, "variables": ["x"]}
    _, doc, _ = run("derive", "--expr", "5", "--var", "x", "--at", "x=1")
    assert doc["value"] == "0"
    _, doc, _ = run("derive", "--expr", "x*y", "--var", "x", "--var", "y", "--order", "2", "--at", "x=5,y=7")
    assert doc["value"] == "1"
    _, doc, _ = run("derive", "--expr", "x^3", "--var", "x", "--order", "3", "--at", "x=2")
    assert doc == {"value": "6", "order": 3, "variables": ["x", "x", "x"]}


def test_derive_unbound_variable(run):
    code, doc, _ = run("derive", "--expr", "x^2", "--var", "z", "--at", "x=1")
    assert code == 2
    assert "unbound variable 'z'" in doc["error"]


def test_divdiff(run):
    code, doc, _ = run("divdiff", "--expr", "x^2", "--v0", "3", "--v1", "1", "--t", "1", "--s", "0")
    assert code == 0
    assert doc == {"w0": "9", "w1": "7", "points": [["3"], ["4"]]}


def test_divdiff_needs_distinct_times(run):
    code, doc, err = run("divdiff", "--expr", "x^2", "--v0", "3", "--v1", "1", "--t", "1", "--s", "1")
    assert code == 2
    assert "label not regular" in doc["error"]
    assert "label not regular" in err


def test_divdiff_negative_time(run):
    code, doc, _ = run("divdiff", "--expr", "3*x", "--v0", "2", "--v1", "5", "--t", "2", "--s=-1")
    assert code == 0
    assert (doc["w0"], doc["w1"]) == ("6", "15")


def test_anchor_rows(run):
    code, doc, _ = run("anchor", "--t", "1", "--s", "0")
    assert code == 0
    assert doc["label"] == {"n": 1, "t": ["1"], "s": ["0"], "kind": "regular"}
    assert doc["matrix"] == {"dim": 1, "rows": [["1", "0"], ["1", "1"]]}
    _, doc, _ = run("anchor", "--t", "1", "--s", "0", "--inverse")
    assert doc["inverse"] is True
    assert doc["matrix"]["rows"] == [["1", "0"], ["-1", "1"]]


def test_second_order_anchor_rows(run):
    code, doc, _ = run("anchor", "--t", "1,1", "--s", "0,0")
    assert code == 0
    assert doc["matrix"] == {
        "dim": 2,
        "rows": [["1", "0", "0", "0"], ["1", "1", "0", "0"], ["1", "0", "1", "0"], ["1", "1", "1", "1"]],
    }
    code, doc, _ = run("anchor", "--t", "1,1", "--s", "0,0", "--inverse")
    assert code == 0
    assert doc["matrix"]["rows"] == [
        ["1", "0", "0", "0"], ["-1", "1", "0", "0"], ["-1", "0", "1", "0"], ["1", "-1", "-1", "1"],
    ]


def test_anchor_inverse_of_singular_label(run):
    code, doc, _ = run("anchor", "--t", "1,2", "--s", "1,0", "--inverse")
    assert code == 2
    assert "not regular" in doc["error"]


def test_kron(run):
    blocks = json.dumps([[[1, 2], [3, 10]]])
    code, doc, _ = run("kron", "--blocks", blocks, "--det")
    assert code == 0
    assert doc == {"value": "4"}
    _, doc, _ = run("kron", "--blocks", blocks, "--inverse")
    assert doc["matrix"]["rows"] == [["5/2", "-1/2"], ["-3/4", "1/4"]]
    code, doc, _ = run("kron", "--blocks", json.dumps([[[1, 2], [2, 4]]]), "--inverse")
    assert code == 2
    assert "non-invertible" in doc["error"]


def test_slope_methods(run):
    code, doc, _ = run("slope", "--expr", "x^2", "--t", "1", "--s", "0", "--coeffs", "[3, 1]")
    assert code == 0
    assert doc["method"] == "anchor"
    assert [c["value"] for c in doc["result"]["coefficients"]] == [["9"], ["7"]]
    _, doc, _ = run("slope", "--expr", "x^2", "--t", "0", "--s", "0", "--coeffs", "[3, 1]")
    assert doc["method"] == "algebra"
    assert doc["result"]["label"]["kind"] == "singular"
    assert [c["value"] for c in doc["result"]["coefficients"]] == [["9"], ["6"]]
    _, doc, _ = run(
        "slope", "--expr", "x^2", "--t", "1,1", "--s", "0,0", "--coeffs", "[1, 1, 1, 0]", "--method", "formula"
    )
    assert [c["value"] for c in doc["result"]["coefficients"]] == [["1"], ["3"], ["3"], ["2"]]
    assert [c["subset"] for c in doc["result"]["coefficients"]] == [[], [1], [2], [1, 2]]


def test_verify_structure(run, tmp_path):
    report = tmp_path / "out" / "report.json"
    code, doc, err = run("verify", "--suite", "structure", "--seed", "7", "--cases", "5", "--report", str(report))
    assert code == 0
    assert doc["ok"] is True
    assert doc["seed"] == 7
    assert [s["suite"] for s in doc["suites"]] == ["structure"]
    assert "structure:" in err
    assert json.loads(report.read_text()) == doc


def test_usage_errors(run):
    code, doc, _ = run("frobnicate")
    assert code == 2
    assert "error" in doc
    code, doc, _ = run("derive", "--expr", "x + ", "--var", "x", "--at", "x=1")
    assert code == 2
    assert "column 5" in doc["error"]
    code, doc, _ = run("derive", "--expr", "0.5*x", "--var", "x", "--at", "x=1")
    assert code == 2
    assert "decimal" in doc["error"]


def test_float_ring(run, monkeypatch):
    code, doc, _ = run("--ring", "float", "divdiff", "--expr", "0.5*x", "--v0", "2", "--v1", "1", "--t", "1", "--s", "0")
    assert code == 0
    assert doc["w0"] == pytest.approx(1.0)
    assert doc["w1"] == pytest.approx(0.5)
    monkeypatch.setenv("TANGENT_RING", "float")
    _, doc, _ = run("derive", "--expr", "x^2", "--var", "x", "--at", "x=3")
    assert doc["value"] == pytest.approx(6.0)


def test_config_file_is_read(run, tmp_path):
    path = tmp_path / "custom.json"
    path.write_text(json.dumps({"max_dim": 2}))
    code, doc, _ = run("--config", str(path), "anchor", "--t", "1,1,1", "--s", "0,0,0")
    assert code == 2
    assert "max_dim 2" in doc["error"]


def test_config_command_saves_settings(run, clean_env, monkeypatch):
    code, doc, err = run("config", "--set", "seed=42", "--set", "ring=float")
    assert code == 0
    assert (doc["config"]["seed"], doc["config"]["ring"]) == (42, "float")
    assert "saved 2 setting(s)" in err
    assert json.loads((clean_env / "tangent.json").read_text())["seed"] == 42
    _, doc, _ = run("config")
    assert doc == {"file": "tangent.json", "config": {**doc["config"], "seed": 42, "ring": "float"}}
    monkeypatch.setenv("TANGENT_SEED", "7")
    run("config", "--set", "workers=2")
    saved = json.loads((clean_env / "tangent.json").read_text())
    assert (saved["seed"], saved["workers"]) == (42, 2)


def test_config_command_rejects_bad_settings(run):
    code, doc, _ = run("config", "--set", "workers=0")
    assert code == 2
    assert "invalid value" in doc["error"]
    code, doc, _ = run("config", "--set", "workers")
    assert code == 2
    assert "key=value" in doc["error"]
