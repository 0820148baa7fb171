import json

import numpy as np
import pytest

from clhs import load_design_spec, read_samples, verify_lhs
from clhs.cli import main


@pytest.fixture
def spec_path(data_dir):
    return str(data_dir / "fig3a.json")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("method", ["srs", "lhs", "csrs", "clhs"])
def test_generate_methods(tmp_path, capsys, spec_path, method):
    out = tmp_path / "s.csv"
    code, _, _ = run(capsys, "generate", "--spec", spec_path, "--n", "50", "--seed", "1",
                     "--method", method, "--out", str(out))
    assert code == 0
    m = read_samples(out.read_bytes())
    assert m.values.shape == (50, 2)
    if method in ("csrs", "clhs"):
        assert np.all(m.values[:, 0] < m.values[:, 1])


def test_generate_deterministic(tmp_path, capsys, spec_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        assert run(capsys, "generate", "--spec", spec_path, "--n", "100", "--seed", "42",
                   "--out", str(path))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_generate_json_stdout(capsys, spec_path):
    code, out, _ = run(capsys, "generate", "--spec", spec_path, "--n", "3", "--seed", "7",
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["names"] == ["x1", "x2"] and doc["seed"] == 7 and len(doc["rows"]) == 3


def test_check_and_diagnose(tmp_path, capsys, spec_path):
    clhs_out, srs_out = tmp_path / "c.csv", tmp_path / "s.csv"
    run(capsys, "generate", "--spec", spec_path, "--n", "200", "--seed", "3", "--out", str(clhs_out))
    run(capsys, "generate", "--spec", spec_path, "--n", "200", "--seed", "3", "--method", "srs",
        "--out", str(srs_out))
    code, out, _ = run(capsys, "check", "--spec", spec_path, "--samples", str(clhs_out))
    assert code == 0 and json.loads(out)["ok"]
    code, out, _ = run(capsys, "check", "--spec", spec_path, "--samples", str(srs_out))
    assert code == 1 and not json.loads(out)["ok"]

    code, out, _ = run(capsys, "diagnose", "--spec", spec_path, "--samples", str(clhs_out))
    assert code == 0
    rep = json.loads(out)
    assert rep["stratified"] == [True, True]
    assert rep["links"][0]["gamma"] == 0.25
    assert rep["links"][0]["predicted_rho"] == pytest.approx(0.6945)


def test_check_oracle_flag(tmp_path, capsys, spec_path):
    out = tmp_path / "small.csv"
    run(capsys, "generate", "--spec", spec_path, "--n", "6", "--seed", "5", "--method", "lhs",
        "--out", str(out))
    code, text, _ = run(capsys, "check", "--spec", spec_path, "--samples", str(out),
                        "--oracle", "--allow-unstratified")
    link = json.loads(text)["links"][0]
    assert link["oracle_agrees"]
    assert code == (0 if link["satisfied"] else 1)

    big = tmp_path / "big.csv"
    run(capsys, "generate", "--spec", spec_path, "--n", "20", "--seed", "5", "--out", str(big))
    assert run(capsys, "check", "--spec", spec_path, "--samples", str(big), "--oracle")[0] == 1


def test_curves(tmp_path, capsys, data_dir):
    spec_path = str(data_dir / "welding_young_modulus.json")
    samples = tmp_path / "w.csv"
    assert run(capsys, "generate", "--spec", spec_path, "--n", "4", "--seed", "9",
               "--out", str(samples))[0] == 0
    code, out, _ = run(capsys, "curves", "--spec", spec_path, "--samples", str(samples))
    lines = out.splitlines()
    assert code == 0 and lines[0] == "20,200,400,600,800,1000,1100" and len(lines) == 5
    code, out, _ = run(capsys, "curves", "--spec", spec_path, "--samples", str(samples),
                       "--query", "20,560,1100")
    assert code == 0 and out.splitlines()[0] == "20,560,1100"
    code, _, _ = run(capsys, "curves", "--spec", spec_path, "--samples", str(samples),
                     "--query", "0,560")
    assert code == 1


def test_exit_codes(tmp_path, capsys, spec_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"variables": [{"dist": "uniform", "min": 0, "max": 2},'
                   ' {"dist": "uniform", "min": 0, "max": 1}], "chain": "<"}')
    assert run(capsys, "generate", "--spec", str(bad), "--n", "5")[0] == 1
    assert run(capsys, "generate", "--spec", str(tmp_path / "missing.json"), "--n", "5")[0] == 3

    tight = tmp_path / "tight.json"
    tight.write_text('{"variables": [{"dist": "uniform", "min": 0, "max": 1},'
                     ' {"dist": "uniform", "min": 0, "max": 1}], "chain": "<"}')
    code, _, err = run(capsys, "generate", "--spec", str(tight), "--n", "60", "--seed", "1",
                       "--max-retries", "2")
    assert code == 2 and "x2" in err


def test_env_retry_cap(tmp_path, capsys, monkeypatch):
    tight = tmp_path / "tight.json"
    tight.write_text('{"variables": [{"dist": "uniform", "min": 0, "max": 1},'
                     ' {"dist": "uniform", "min": 0, "max": 1}], "chain": "<"}')
    monkeypatch.setenv("CLHS_MAX_RETRIES", "1")
    assert run(capsys, "generate", "--spec", str(tight), "--n", "60", "--seed", "1")[0] == 2


def test_shipped_specs_generate_valid(tmp_path, capsys, data_dir):
    for name in ("fig5a", "fig5b", "welding_young_modulus"):
        out = tmp_path / f"{name}.csv"
        path = str(data_dir / f"{name}.json")
        assert run(capsys, "generate", "--spec", path, "--n", "30", "--seed", "11",
                   "--out", str(out))[0] == 0
        assert run(capsys, "check", "--spec", path, "--samples", str(out))[0] == 0
        assert all(verify_lhs(read_samples(out.read_bytes()), load_design_spec(path)))
