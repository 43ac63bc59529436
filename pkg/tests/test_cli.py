import csv
import hashlib
import json

import pytest

from costnet.bench import analytic_tradeoff
from costnet.cli import run
from costnet.netmodel import build_grid


@pytest.fixture
def scenario(tmp_path):
    path = tmp_path / "grid.json"
    path.write_text(json.dumps({"kind": "multi_user", "grid_n": 6, "users": 4, "samples": 15, "routing": {"max_paths": 3}}))
    return path


def test_simulate_outputs(tmp_path, scenario):
    out = tmp_path / "res"
    assert run(["simulate", "--config", str(scenario), "--seed", "42", "--out", str(out)]) == 0
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["seed"] == 42 and manifest["config"]["seed"] == 42
    for name, digest in manifest["outputs"].items():
        assert hashlib.sha256((out / name).read_bytes()).hexdigest() == digest
    summary = json.loads((out / "summary.json").read_text())
    assert summary["seed"] == 42 and len(summary["summary"]["P"]) == 4
    rows = list(csv.DictReader(open(out / "records.csv")))
    assert len(rows) == 60


def test_simulate_is_deterministic(tmp_path, scenario):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run(["simulate", "--config", str(scenario), "--seed", "7", "--out", str(a)]) == 0
    assert run(["simulate", "--config", str(scenario), "--seed", "7", "--out", str(b), "--threads", "2"]) == 0
    assert (a / "records.csv").read_bytes() == (b / "records.csv").read_bytes()
    assert (a / "summary.json").read_bytes() == (b / "summary.json").read_bytes()


def test_simulate_json_format(tmp_path, scenario):
    out = tmp_path / "j"
    assert run(["simulate", "--config", str(scenario), "--out", str(out), "--format", "json"]) == 0
    assert len(json.loads((out / "records.json").read_text())) == 60


@pytest.mark.parametrize(
    "content",
    ['{"kind": "multi_user", "extra": 1}', '{"kind": "bogus"}', "not json", '{"samples": 0}', "[1, 2]"],
)
def test_simulate_rejects_bad_config(tmp_path, content, capsys):
    cfg = tmp_path / "bad.json"
    cfg.write_text(content)
    assert run(["simulate", "--config", str(cfg), "--out", str(tmp_path / "o")]) != 0
    assert "error" in capsys.readouterr().err


def test_missing_config_and_unknown_command(tmp_path, capsys):
    assert run(["simulate", "--config", str(tmp_path / "none.json"), "--out", str(tmp_path)]) != 0
    assert run(["explode"]) != 0
    assert run([]) != 0


def test_curves(tmp_path):
    out = tmp_path / "curves.csv"
    assert run(["curves", "--max-paths", "4", "--points", "20", "--out", str(out)]) == 0
    rows = list(csv.DictReader(open(out)))
    assert len(rows) == 80
    for r in rows:
        e, f = analytic_tradeoff(float(r["E1"]), int(r["paths"]))
        assert float(r["E"]) == e and float(r["F"]) == f
    assert (tmp_path / "curves.csv.manifest.json").exists()


def test_reduce(tmp_path):
    g = tmp_path / "g.json"
    build_grid(2).save(g)
    out = tmp_path / "r.json"
    assert run(["reduce", str(g), "--terminals", "0", "3", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert len(data["channels"]) == 1 and len(data["nodes"]) == 2
    opts = tmp_path / "opts.json"
    opts.write_text('{"terminals": [0, 3], "threshold": 1.0}')
    assert run(["reduce", str(g), "--config", str(opts), "--out", str(out)]) == 0
    assert json.loads(out.read_text())["channels"] == []
    opts.write_text('{"terminal": [0]}')
    assert run(["reduce", str(g), "--config", str(opts), "--out", str(out)]) != 0


def test_satellite(tmp_path):
    out = tmp_path / "pass.csv"
    assert run(["satellite", "--out", str(out)]) == 0
    rows = list(csv.DictReader(open(out)))
    assert len(rows) == 11
    best = max(rows, key=lambda r: float(r["freespace_eta"]))
    assert best["t"] == "5"
    cfg = tmp_path / "pass.json"
    cfg.write_text('{"orbit": 3}')
    assert run(["satellite", "--config", str(cfg), "--out", str(out)]) != 0
