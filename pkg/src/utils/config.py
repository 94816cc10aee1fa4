from __future__ import annotations

import os
from pathlib import Path
from typing import Any, Literal

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from core.errors import ConfigError
from core.tolerances import Tolerances


TOLERANCE_KEYS = ("deriv_rel", "fd_rel", "quad_abs", "newton_tol", "max_newton_iter")


def _project_root() -> Path:
    # Resolve from this file: .../src/utils/config.py -> project root is 3 parents up.
    return Path(__file__).resolve().parents[2]


def load_yaml(path: str | Path) -> dict[str, Any]:
    p = Path(path)
    try:
        raw = yaml.safe_load(p.read_text(encoding="utf-8"))
    except FileNotFoundError as e:
        raise ConfigError(f"Config file not found: {p}") from e
    except yaml.YAMLError as e:
        raise ConfigError(f"Malformed YAML in {p}: {e}") from e
    if raw is None:
        return {}
    if not isinstance(raw, dict):
        raise ConfigError(f"Top level of {p} must be a mapping, got {type(raw).__name__}")
    return raw


def tolerances_from_mapping(raw: dict[str, Any], *, source: str = "<mapping>", require_all: bool = False) -> Tolerances:
    unknown = sorted(set(raw) - set(TOLERANCE_KEYS))
    if unknown:
        raise ConfigError(f"Unknown tolerance keys {unknown} in {source}")
    if require_all:
        missing = [f"tolerances.{k}" for k in TOLERANCE_KEYS if raw.get(k) is None]
        if missing:
            raise ConfigError(f"Missing {', '.join(missing)} in {source}")

    values: dict[str, Any] = {}
    for k in TOLERANCE_KEYS:
        if raw.get(k) is None:
            continue
        try:
            values[k] = int(raw[k]) if k == "max_newton_iter" else float(raw[k])
        except (TypeError, ValueError) as e:
            raise ConfigError(f"tolerances.{k} must be numeric in {source}, got {raw[k]!r}") from e
    return Tolerances(**values)


def load_tolerances(path: str | None = None) -> Tolerances:
    """
    Load the tolerance policy from YAML.

    Precedence:
    - explicit `path`
    - env `THERMO_ACTION_TOLERANCES_CONFIG`
    - project default `config/tolerances.yaml`
    """
    load_dotenv()
    cfg_path = Path(path or os.getenv("THERMO_ACTION_TOLERANCES_CONFIG") or (_project_root() / "config" / "tolerances.yaml"))
    cfg = load_yaml(cfg_path)
    tol = cfg.get("tolerances")
    if not isinstance(tol, dict):
        raise ConfigError(f"Missing tolerances mapping in {cfg_path}")
    return tolerances_from_mapping(tol, source=str(cfg_path), require_all=True)


def resolve_output_dir(configured: str | Path) -> Path:
    """Env `THERMO_ACTION_OUTPUT_DIR` wins over the run config's output_dir."""
    load_dotenv()
    override = (os.getenv("THERMO_ACTION_OUTPUT_DIR") or "").strip()
    return Path(override or configured)


class StrictModel(BaseModel):
    """Base model: unknown keys are configuration errors."""

    model_config = ConfigDict(extra="forbid")


class DomainSpec(StrictModel):
    s_range: tuple[float, float]
    v_range: tuple[float, float]


class ModelSpec(StrictModel):
    name: Literal["ideal_gas", "van_der_waals"]
    parameters: dict[str, float] = Field(default_factory=dict)
    domain: DomainSpec | None = None
    # Negative control: P -> P + S.
    corrupt_pressure: bool = False


class TaskEntry(StrictModel):
    task: str
    id: str | None = None
    params: dict[str, Any] = Field(default_factory=dict)


class RunConfig(StrictModel):
    model: ModelSpec
    tolerances: dict[str, float] = Field(default_factory=dict)
    derivative_mode: Literal["analytic", "dual_number", "central_difference"] = "analytic"
    tasks: list[TaskEntry] = Field(min_length=1)
    output_dir: str = "reports"

    @field_validator("tolerances")
    @classmethod
    def _check_tolerances(cls, value: dict[str, float]) -> dict[str, float]:
        # Raises ConfigError (a ValueError) for unknown keys or non-positive values.
        tolerances_from_mapping(value, source="run config")
        return value


def load_run_config(path: str | Path) -> tuple[RunConfig, dict[str, Any]]:
    """Parse and validate a run config; returns the model and the raw mapping it came from."""
    raw = load_yaml(path)
    try:
        return RunConfig.model_validate(raw), raw
    except ValidationError as e:
        raise ConfigError(f"Invalid run config {path}: {e}") from e
