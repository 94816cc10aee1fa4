"""
Batch driver: load a run config, execute its tasks in order, write one JSON report and one
CSV table per report.

Exit status: 0 when every report passes, 1 when any report fails, 2 when the config is
invalid (nothing is written in that case).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ValidationError

from calculus.derivatives import DerivativeMode
from core.errors import ConfigError, ThermoError
from core.tolerances import Tolerances
from eos.models import EosModel
from jobs.common import TaskContext, build_model, collect_seeds
from jobs.registry import TaskInfo, get_task
from jobs.reporting import Provenance, VerificationReport, config_sha256, failed_report, write_report
from utils.config import RunConfig, load_run_config, load_tolerances, resolve_output_dir, tolerances_from_mapping
from utils.logging import get_logger, log_context


logger = get_logger(component="jobs_runner")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2


@dataclass(frozen=True)
class PlannedTask:
    info: TaskInfo
    params: BaseModel
    report_prefix: str


@dataclass(frozen=True)
class PreparedRun:
    config_path: Path
    config: RunConfig
    raw: dict[str, Any]
    sha256: str
    model: EosModel
    tolerances: Tolerances
    mode: DerivativeMode
    tasks: list[PlannedTask]
    output_dir: Path


@dataclass
class RunResult:
    status: int
    reports: list[VerificationReport] = field(default_factory=list)
    written: list[Path] = field(default_factory=list)
    error: str | None = None


def prepare(config_path: str | Path) -> PreparedRun:
    """Parse and validate everything up front; raises ConfigError on any problem."""
    path = Path(config_path)
    cfg, raw = load_run_config(path)

    base = load_tolerances()
    overrides = tolerances_from_mapping(cfg.tolerances, source=str(path))
    tolerances = base.with_overrides(**{k: getattr(overrides, k) for k in cfg.tolerances})
    model = build_model(cfg.model)

    planned: list[PlannedTask] = []
    seen: dict[str, int] = {}
    for k, entry in enumerate(cfg.tasks):
        try:
            info = get_task(entry.task)
        except KeyError as e:
            raise ConfigError(f"tasks[{k}]: {e.args[0]}") from None
        try:
            params = info.params_model.model_validate(entry.params)
        except ValidationError as e:
            raise ConfigError(f"tasks[{k}] ({entry.task}) params: {e}") from e
        prefix = entry.id or entry.task
        seen[prefix] = seen.get(prefix, 0) + 1
        if seen[prefix] > 1:
            prefix = f"{prefix}-{seen[prefix]}"
        planned.append(PlannedTask(info=info, params=params, report_prefix=prefix))

    return PreparedRun(
        config_path=path,
        config=cfg,
        raw=raw,
        sha256=config_sha256(raw),
        model=model,
        tolerances=tolerances,
        mode=DerivativeMode(cfg.derivative_mode),
        tasks=planned,
        output_dir=resolve_output_dir(cfg.output_dir),
    )


def _provenance(run: PreparedRun, task: PlannedTask) -> Provenance:
    return Provenance(
        config_path=str(run.config_path),
        config_sha256=run.sha256,
        seeds=collect_seeds(task.params.model_dump(mode="json")),
        model=run.model.describe(),
        config=run.raw,
    )


def _run_task(run: PreparedRun, task: PlannedTask) -> list[VerificationReport]:
    provenance = _provenance(run, task)
    ctx = TaskContext(
        task=task.info.name,
        report_prefix=task.report_prefix,
        model=run.model,
        tolerances=run.tolerances,
        mode=run.mode,
        provenance=provenance,
    )
    with log_context(task=task.info.name, report_prefix=task.report_prefix):
        logger.info("task_start", seeds=provenance.seeds)
        try:
            return task.info.run(ctx, task.params)
        except ThermoError as e:
            logger.error("task_error", error_type=type(e).__name__, error=str(e))
            return [failed_report(task.info.name, task.report_prefix, f"{type(e).__name__}: {e}", provenance)]


def execute(config_path: str | Path) -> RunResult:
    try:
        run = prepare(config_path)
    except ConfigError as e:
        logger.error("config_invalid", config=str(config_path), error=str(e))
        return RunResult(status=EXIT_CONFIG, error=str(e))

    result = RunResult(status=EXIT_OK)
    with log_context(config_sha256=run.sha256):
        logger.info(
            "run_start",
            config=str(run.config_path),
            model=run.model.name,
            tasks=[t.info.name for t in run.tasks],
            output_dir=str(run.output_dir),
        )
        for task in run.tasks:
            for report in _run_task(run, task):
                result.reports.append(report)
                result.written.extend(write_report(report, run.output_dir))
                if report.passed:
                    logger.info("task_complete", report=report.report_id, passed=True, max_residual=report.max_residual)
                else:
                    logger.warning(
                        "task_failed",
                        report=report.report_id,
                        failing=report.failing,
                        max_residual=report.max_residual,
                        error=report.error,
                    )
                    result.status = EXIT_FAILED

        logger.info("run_complete", status=result.status, reports=len(result.reports))
    return result


def run(config_path: str | Path) -> int:
    return execute(config_path).status
