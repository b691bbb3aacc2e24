import json
import subprocess
import sys

import pytest

from nrqed_entangle.cli import OUTDIR_ENV, config_hash, load_config, main

FAST = """
verify:
  n_samples: 10
  k_grid: [1.0]
  n_theta: 8
  n_phi: 4
  oracle_q: [1.0]
  oracle_pairs: 1
"""


def _lines(path):
    return [json.loads(line) for line in path.read_text().splitlines()]


@pytest.fixture
def fast_config(tmp_path):
    path = tmp_path / "fast.yaml"
    path.write_text(FAST)
    return path


def test_verify_passes_and_is_reproducible(tmp_path, fast_config):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    assert main(["verify", "--config", str(fast_config), "--out", str(a)]) == 0
    assert main(["verify", "--config", str(fast_config), "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    records = _lines(a)
    assert records[0]["kind"] == "config"
    assert records[-1]["kind"] == "summary" and records[-1]["data"]["passed"]
    assert {r["config_hash"] for r in records} == {config_hash(load_config(fast_config))}


def test_seed_changes_hash(fast_config):
    assert config_hash(load_config(fast_config, seed=1)) != config_hash(load_config(fast_config, seed=2))


@pytest.mark.parametrize("command", ["amplitude", "evolve", "oracle", "second-born"])
def test_commands_emit_records(tmp_path, command):
    out = tmp_path / "out.jsonl"
    assert main([command, "--out", str(out)]) == 0
    kinds = [r["kind"] for r in _lines(out)]
    assert kinds[0] == "config" and len(kinds) == 2


def test_scan_command(tmp_path):
    cfg = tmp_path / "scan.yaml"
    cfg.write_text("scan:\n  initial: psi+\n  k_grid: [1.0]\n  n_theta: 4\n  n_phi: 2\n")
    out = tmp_path / "scan.jsonl"
    assert main(["scan", "--config", str(cfg), "--out", str(out)]) == 0
    records = _lines(out)
    assert sum(r["kind"] == "point" for r in records) == 8
    assert records[-1]["data"]["points"] == 8


def test_output_directory_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv(OUTDIR_ENV, str(tmp_path / "runs"))
    assert main(["amplitude"]) == 0
    assert (tmp_path / "runs" / "amplitude.jsonl").exists()


def test_forward_kinematics_is_a_failure(tmp_path):
    cfg = tmp_path / "fwd.yaml"
    cfg.write_text("amplitude:\n  theta: 0.0\n")
    out = tmp_path / "out.jsonl"
    assert main(["amplitude", "--config", str(cfg), "--out", str(out)]) == 1
    assert _lines(out)[-1]["data"]["type"] == "ForwardSingularity"


@pytest.mark.parametrize("text", ["verify:\n  bogus: 1\n", "alpha: -1\n", "[1, 2]\n", "scan: 3\n",
                                  "oracle:\n  term: nope\n", "alpha: [unclosed\n"])
def test_bad_config_exit_code(tmp_path, text):
    cfg = tmp_path / "bad.yaml"
    cfg.write_text(text)
    assert main(["amplitude", "--config", str(cfg)]) == 2


def test_usage_errors():
    assert main(["nope"]) == 2
    assert main(["amplitude", "--config", "/nonexistent/file.yaml"]) == 2


def test_summary_table(tmp_path, capsys):
    assert main(["evolve", "--summary", "--out", str(tmp_path / "e.jsonl")]) == 0
    assert "final concurrence" in capsys.readouterr().err


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "nrqed_entangle", "oracle", "--out", str(tmp_path / "o.jsonl")],
                          capture_output=True, text=True)
    assert proc.returncode == 0
