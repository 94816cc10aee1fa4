"""
Verification reports: one JSON document plus one flat CSV table per report.

A report passes when every residual column meets its bound:
- max_le: max |value| <= tolerance (the usual residual check)
- max_ge: max |value| >= tolerance (contrast checks that must detect a non-zero effect)

Non-finite values count as infinite, so a singular point can never pass a max_le check.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field


Record = dict[str, float | int | str]
Bound = Literal["max_le", "max_ge"]


@dataclass(frozen=True)
class CheckSpec:
    column: str
    tolerance: float
    bound: Bound = "max_le"


class ColumnCheck(BaseModel):
    model_config = ConfigDict(ser_json_inf_nan="constants")

    column: str
    bound: Bound
    tolerance: float
    max_abs: float
    mean_abs: float
    passed: bool


class Provenance(BaseModel):
    model_config = ConfigDict(ser_json_inf_nan="constants")

    config_path: str
    config_sha256: str
    seeds: dict[str, int] = Field(default_factory=dict)
    model: dict[str, Any] = Field(default_factory=dict)
    # The full run config, so any report can be re-run on its own.
    config: dict[str, Any] = Field(default_factory=dict)


class VerificationReport(BaseModel):
    model_config = ConfigDict(ser_json_inf_nan="constants")

    task: str
    report_id: str
    passed: bool
    max_residual: float
    mean_residual: float
    tolerance: float
    checks: list[ColumnCheck] = Field(default_factory=list)
    failing: list[str] = Field(default_factory=list)
    error: str | None = None
    records: list[Record] = Field(default_factory=list)
    provenance: Provenance

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        if self.error:
            return f"{status} {self.report_id}: {self.error}"
        detail = ", ".join(
            f"{c.column} max={c.max_abs:.3e} {'<=' if c.bound == 'max_le' else '>='} {c.tolerance:.1e}"
            for c in self.checks
            if not self.passed and not c.passed
        )
        head = f"{status} {self.report_id}: max={self.max_residual:.3e} tol={self.tolerance:.1e} records={len(self.records)}"
        return f"{head} [{detail}]" if detail else head


def config_sha256(raw: dict[str, Any]) -> str:
    canonical = json.dumps(raw, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def _abs_values(records: list[Record], column: str) -> list[float]:
    out: list[float] = []
    for r in records:
        if column not in r:
            continue
        x = float(r[column])
        out.append(abs(x) if math.isfinite(x) else math.inf)
    return out


def evaluate_check(records: list[Record], spec: CheckSpec) -> ColumnCheck:
    values = _abs_values(records, spec.column)
    max_abs = max(values) if values else 0.0
    mean_abs = math.fsum(values) / len(values) if values else 0.0
    if not values:
        passed = False
    elif spec.bound == "max_le":
        passed = max_abs <= spec.tolerance
    else:
        passed = math.isfinite(max_abs) and max_abs >= spec.tolerance
    return ColumnCheck(
        column=spec.column, bound=spec.bound, tolerance=spec.tolerance, max_abs=max_abs, mean_abs=mean_abs, passed=passed
    )


def build_report(
    task: str,
    report_id: str,
    records: list[Record],
    checks: list[CheckSpec],
    provenance: Provenance,
) -> VerificationReport:
    """Evaluate `checks` over `records`; the first check is the headline residual."""
    if not checks:
        raise ValueError(f"Report {report_id} needs at least one check")
    results = [evaluate_check(records, c) for c in checks]
    head = results[0]
    return VerificationReport(
        task=task,
        report_id=report_id,
        passed=all(c.passed for c in results),
        max_residual=head.max_abs,
        mean_residual=head.mean_abs,
        tolerance=head.tolerance,
        checks=results,
        failing=[c.column for c in results if not c.passed],
        records=records,
        provenance=provenance,
    )


def failed_report(task: str, report_id: str, error: str, provenance: Provenance) -> VerificationReport:
    return VerificationReport(
        task=task,
        report_id=report_id,
        passed=False,
        max_residual=math.inf,
        mean_residual=math.inf,
        tolerance=0.0,
        error=error,
        provenance=provenance,
    )


def _cell(value: float | int | str) -> str:
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def write_csv(records: list[Record], path: Path) -> None:
    columns: list[str] = []
    for r in records:
        for k in r:
            if k not in columns:
                columns.append(k)
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for r in records:
            writer.writerow([_cell(r[k]) if k in r else "" for k in columns])


def write_report(report: VerificationReport, out_dir: Path) -> tuple[Path, Path]:
    """Write <report_id>.json and <report_id>.csv into out_dir."""
    out_dir.mkdir(parents=True, exist_ok=True)
    json_path = out_dir / f"{report.report_id}.json"
    csv_path = out_dir / f"{report.report_id}.csv"
    json_path.write_text(report.model_dump_json(indent=2) + "\n", encoding="utf-8")
    write_csv(report.records, csv_path)
    return json_path, csv_path
