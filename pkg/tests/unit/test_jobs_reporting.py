from __future__ import annotations

import json
import math
from pathlib import Path

from jobs.reporting import (
    CheckSpec,
    Provenance,
    build_report,
    config_sha256,
    evaluate_check,
    failed_report,
    write_report,
)


PROV = Provenance(config_path="run.yaml", config_sha256="abc", seeds={"seed": 1}, model={"name": "ideal_gas"}, config={"a": 1})


def test_max_le_and_max_ge_checks():
    records = [{"id": "a", "r": 1e-12, "w": 0.02}, {"id": "b", "r": -3e-11, "w": -0.5}]
    le = evaluate_check(records, CheckSpec("r", 1e-10))
    assert le.passed
    assert le.max_abs == 3e-11
    ge = evaluate_check(records, CheckSpec("w", 1e-3, bound="max_ge"))
    assert ge.passed
    assert not evaluate_check(records, CheckSpec("w", 1.0, bound="max_ge")).passed


def test_non_finite_values_never_pass():
    records = [{"r": math.nan}, {"r": 0.0}]
    check = evaluate_check(records, CheckSpec("r", 1.0))
    assert not check.passed
    assert math.isinf(check.max_abs)
    assert not evaluate_check([{"w": math.inf}], CheckSpec("w", 1.0, bound="max_ge")).passed


def test_missing_column_fails():
    assert not evaluate_check([{"x": 0.0}], CheckSpec("r", 1.0)).passed


def test_build_report_headline_and_failing_columns():
    records = [{"id": "p0", "jacobian": 1e-15, "route_gap": 0.1}]
    report = build_report("check-maxwell", "m.case1", records, [CheckSpec("jacobian", 1e-8), CheckSpec("route_gap", 1e-9)], PROV)
    assert report.max_residual == 1e-15
    assert report.tolerance == 1e-8
    assert not report.passed
    assert report.failing == ["route_gap"]
    assert report.summary().startswith("FAIL m.case1")
    assert "route_gap" in report.summary()


def test_failed_report_summary():
    report = failed_report("run-cycle", "carnot", "UnreachableConstraintError: nope", PROV)
    assert not report.passed
    assert report.summary() == "FAIL carnot: UnreachableConstraintError: nope"


def test_config_hash_ignores_key_order():
    assert config_sha256({"a": 1, "b": [1, 2]}) == config_sha256({"b": [1, 2], "a": 1})
    assert config_sha256({"a": 1}) != config_sha256({"a": 2})


def test_write_report_files(tmp_path: Path):
    records = [{"id": "p0", "x": 0.1, "flag": True}, {"id": "p1", "x": 1.0 / 3.0, "extra": 2}]
    report = build_report("green-check", "green", records, [CheckSpec("x", 1.0)], PROV)
    json_path, csv_path = write_report(report, tmp_path / "out")

    doc = json.loads(json_path.read_text(encoding="utf-8"))
    assert doc["report_id"] == "green"
    assert doc["passed"] is True
    assert doc["provenance"]["seeds"] == {"seed": 1}
    assert doc["provenance"]["config"] == {"a": 1}

    raw = csv_path.read_bytes()
    assert b"\r\n" not in raw
    lines = raw.decode("utf-8").splitlines()
    assert lines[0] == "id,x,flag,extra"
    assert lines[1] == "p0,0.10000000000000001,1,"
    assert lines[2] == "p1,0.33333333333333331,,2"


def test_infinite_residuals_serialize(tmp_path: Path):
    report = failed_report("x", "x", "boom", PROV)
    json_path, _ = write_report(report, tmp_path)
    assert "Infinity" in json_path.read_text(encoding="utf-8")
