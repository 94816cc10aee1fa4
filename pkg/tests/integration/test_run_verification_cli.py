from __future__ import annotations

import json
from pathlib import Path

import pytest
import yaml

from scripts.run_verification import main


pytestmark = pytest.mark.integration

PROJECT_ROOT = Path(__file__).resolve().parents[2]
RUNS_DIR = PROJECT_ROOT / "config" / "runs"


def _reports(out: Path) -> dict[str, dict]:
    return {p.stem: json.loads(p.read_text(encoding="utf-8")) for p in sorted(out.glob("*.json"))}


def test_ideal_maxwell_run_passes(tmp_path: Path, monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]):
    monkeypatch.setenv("THERMO_ACTION_OUTPUT_DIR", str(tmp_path))
    assert main(["run", str(RUNS_DIR / "ideal_maxwell.yaml")]) == 0

    reports = _reports(tmp_path)
    assert sorted(reports) == [f"ideal_maxwell.case{k}" for k in (1, 2, 3, 4)]
    for report in reports.values():
        assert report["passed"]
        assert len(report["records"]) == 100
        assert report["provenance"]["config"]["model"] == {"name": "ideal_gas"}
    assert "4/4 reports passed; exit 0" in capsys.readouterr().out


def test_corrupted_control_fails_loudly(tmp_path: Path, monkeypatch: pytest.MonkeyPatch):
    monkeypatch.setenv("THERMO_ACTION_OUTPUT_DIR", str(tmp_path))
    assert main(["run", str(RUNS_DIR / "corrupted_control.yaml")]) == 1

    reports = _reports(tmp_path)
    assert reports
    assert not any(r["passed"] for r in reports.values())
    for k in (1, 2, 3, 4):
        checks = {c["column"]: c for c in reports[f"control_maxwell.case{k}"]["checks"]}
        assert checks["jacobian"]["max_abs"] >= 0.5
    assert reports["control_closure.points"]["max_residual"] >= 0.5


def test_invalid_config_exits_2_without_output(tmp_path: Path, monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]):
    out = tmp_path / "out"
    monkeypatch.setenv("THERMO_ACTION_OUTPUT_DIR", str(out))
    cfg = tmp_path / "bad.yaml"
    cfg.write_text(yaml.safe_dump({"model": {"name": "ideal_gas"}, "tasks": [{"task": "green-check"}]}), encoding="utf-8")

    assert main(["run", str(cfg)]) == 2
    assert "config error" in capsys.readouterr().err
    assert not out.exists()


def test_seeded_runs_are_byte_identical(tmp_path: Path, monkeypatch: pytest.MonkeyPatch):
    cfg = tmp_path / "seeded.yaml"
    cfg.write_text(
        yaml.safe_dump(
            {
                "model": {"name": "ideal_gas"},
                "tasks": [
                    {"task": "verify-closure", "params": {"seed": 11, "points": 5, "paths": 2}},
                    {"task": "green-check", "params": {"seed": 11, "rectangles": 1, "random_forms": 2}},
                ],
            }
        ),
        encoding="utf-8",
    )
    outputs = []
    for name in ("a", "b"):
        out = tmp_path / name
        monkeypatch.setenv("THERMO_ACTION_OUTPUT_DIR", str(out))
        assert main(["run", str(cfg)]) == 0
        outputs.append({p.name: p.read_bytes() for p in sorted(out.iterdir())})
    assert outputs[0] == outputs[1]
    assert any(name.endswith(".csv") for name in outputs[0])


def test_list_tasks_json(capsys: pytest.CaptureFixture[str]):
    assert main(["list-tasks", "--json"]) == 0
    catalog = json.loads(capsys.readouterr().out)
    by_name = {entry["name"]: entry for entry in catalog}
    assert set(by_name) == {"check-maxwell", "verify-closure", "integrate-path", "variational-sweep", "run-cycle", "green-check"}
    assert by_name["verify-closure"]["randomized"]
    assert "seed" in by_name["verify-closure"]["required"]
