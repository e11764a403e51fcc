import csv
import json

import pytest

from lambdagate import cli, sweeps
from lambdagate.propagation import NumericalError
from lambdagate.sweeps import (PROCESS_COLUMNS, QEC_COLUMNS, ConfigError, SweepConfig,
                               emit_report, load_config, report_text, run_sweep)

FAST = {"sweep": 6, "grid": {"alpha_cd": [1.0]}, "n_traj": 1, "n_steps": 200, "n_boot": 50}


def test_config_validation():
    with pytest.raises(ConfigError):
        SweepConfig(sweep=42)
    with pytest.raises(ConfigError):
        SweepConfig(sweep=7, grid={"T_gate": []})
    with pytest.raises(ConfigError):
        SweepConfig(sweep=7, grid={"omega": [1.0]})
    with pytest.raises(ConfigError):
        SweepConfig.from_dict({"sweep": 7, "mystery": 1})
    assert SweepConfig(sweep=6).noise is False
    assert SweepConfig(sweep=7).grid == {"T_gate": [1.0, 1.333, 1.833, 2.0]}


def test_env_overrides(tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"sweep": 7, "out": "x/r.json", "seed": 1}))
    d = load_config(str(p), env={"LAMBDAGATE_SEED": "5", "LAMBDAGATE_OUT_DIR": str(tmp_path)})
    assert d["seed"] == 5 and d["out"] == str(tmp_path / "r.json")
    d = load_config(str(p), {"seed": 9}, env={"LAMBDAGATE_SEED": "5"})
    assert d["seed"] == 9


@pytest.fixture(scope="module")
def fast_records():
    return run_sweep(SweepConfig(**FAST))


def test_records_carry_seed_and_ci(fast_records):
    r = fast_records[0]
    assert r.seed == sweeps.child_seed(0, 6, 0)
    assert {"ci_lo", "ci_hi", "F_avg", "leakage"} <= set(r.metrics)
    assert r.metrics["F_avg"] > 0.999


def test_json_round_trip(fast_records, tmp_path):
    cfg = SweepConfig(**FAST).to_dict()
    p = emit_report(fast_records, str(tmp_path / "r.json"), "json", cfg)
    doc = json.load(open(p))
    assert doc["config"] == json.loads(json.dumps(cfg))
    assert doc["records"] == [json.loads(json.dumps(r.as_dict())) for r in fast_records]


def test_csv_columns(fast_records, tmp_path):
    p = emit_report(fast_records, str(tmp_path / "r.csv"), "csv")
    header = next(csv.reader(open(p)))
    assert tuple(header) == PROCESS_COLUMNS


def test_identical_reruns_are_byte_identical(tmp_path):
    path = tmp_path / "r.json"
    blobs = []
    for _ in range(2):
        assert cli.main(["sweep", "--id", "6", "--out", str(path), "--seed", "3"] +
                        ["--n-traj", "1", "--config", str(_cfg(tmp_path))]) == 0
        blobs.append(path.read_bytes())
    assert blobs[0] == blobs[1]


def _cfg(tmp_path):
    p = tmp_path / "fast.json"
    p.write_text(json.dumps({k: v for k, v in FAST.items() if k != "n_traj"}))
    return p


def test_unwritable_path(fast_records):
    with pytest.raises(OSError):
        emit_report(fast_records, "/nonexistent/dir/r.json")
    with pytest.raises(ValueError):
        report_text([])


def test_exit_codes(tmp_path, monkeypatch, capsys):
    assert cli.main(["sweep", "--id", "42"]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert cli.main(["sweep", "--config", str(bad)]) == 2
    assert cli.main(["qec", "--codes", "hex:3"]) == 2
    assert cli.main(["qec", "--trials", "10"]) == 2

    def boom(*a, **k):
        raise NumericalError("diverged")
    monkeypatch.setattr(cli, "run_sweep", boom)
    assert cli.main(["sweep", "--id", "7"]) == 3
    assert "numerical failure" in capsys.readouterr().err


def test_qec_csv(tmp_path):
    out = tmp_path / "q.csv"
    assert cli.main(["qec", "--codes", "toric-XZZX:3", "--scales", "1", "--trials", "100",
                     "--format", "csv", "--out", str(out)]) == 0
    rows = list(csv.reader(open(out)))
    assert tuple(rows[0]) == QEC_COLUMNS and rows[1][0] == "toric-XZZX"


def test_device_and_overhead(tmp_path):
    out = tmp_path / "d.json"
    assert cli.main(["device", "--out", str(out)]) == 0
    assert json.load(open(out))["FSR_MHz"] == pytest.approx(274, abs=1)
    out = tmp_path / "o.json"
    assert cli.main(["overhead", "--out", str(out), "--p-xy-floor", "1e-5", "1e-3"]) == 0
    doc = json.load(open(out))
    assert doc["XZZX"]["d"] == 9 and len(doc["p_xy_scan"]) == 2


def test_sector_subcommand(tmp_path):
    out = tmp_path / "s.json"
    assert cli.main(["sector", "--out", str(out)]) == 0
    doc = json.load(open(out))
    assert doc["A2"]["f0"] == pytest.approx(1.0)
