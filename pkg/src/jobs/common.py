from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np
from pydantic import field_validator

from calculus.derivatives import DerivativeMode
from core.errors import ConfigError, DomainError
from core.tolerances import Tolerances
from eos.models import DomainBox, EosModel, corrupt_pressure, ideal_gas, van_der_waals
from jobs.reporting import CheckSpec, Provenance, Record, VerificationReport, build_report
from utils.config import ModelSpec, StrictModel


@dataclass(frozen=True)
class TaskContext:
    """Everything a task needs besides its own parameters."""

    task: str
    report_prefix: str
    model: EosModel
    tolerances: Tolerances
    mode: DerivativeMode
    provenance: Provenance

    def report(self, suffix: str | None, records: list[Record], checks: list[CheckSpec]) -> VerificationReport:
        report_id = f"{self.report_prefix}.{suffix}" if suffix else self.report_prefix
        return build_report(self.task, report_id, records, checks, self.provenance)


class BoxSpec(StrictModel):
    s_range: tuple[float, float] = (0.0, 1.0)
    v_range: tuple[float, float] = (1.0, 2.0)

    @field_validator("v_range")
    @classmethod
    def _positive_volume(cls, value: tuple[float, float]) -> tuple[float, float]:
        if not 0.0 < value[0] < value[1]:
            raise ValueError(f"v_range must satisfy 0 < lo < hi, got {value}")
        return value

    @field_validator("s_range")
    @classmethod
    def _ordered_entropy(cls, value: tuple[float, float]) -> tuple[float, float]:
        if not value[0] < value[1]:
            raise ValueError(f"s_range must satisfy lo < hi, got {value}")
        return value

    def to_box(self) -> DomainBox:
        return DomainBox(s_range=self.s_range, v_range=self.v_range)


def build_model(spec: ModelSpec) -> EosModel:
    """EosModel from a run-config model section; bad parameters or boxes become ConfigError."""
    domain = DomainBox(s_range=spec.domain.s_range, v_range=spec.domain.v_range) if spec.domain else None
    params = dict(spec.parameters)
    try:
        if spec.name == "ideal_gas":
            if params:
                raise ConfigError(f"ideal_gas takes no parameters, got {sorted(params)}")
            model: EosModel = ideal_gas(domain=domain)
        else:
            unknown = sorted(set(params) - {"a", "b"})
            if unknown:
                raise ConfigError(f"van_der_waals parameters are a and b, got {unknown}")
            model = van_der_waals(params.get("a", 0.0), params.get("b", 0.0), domain=domain)
    except DomainError as e:
        raise ConfigError(f"Invalid model section: {e}") from e
    return corrupt_pressure(model) if spec.corrupt_pressure else model


def child_seeds(seed: int, count: int) -> list[int]:
    """Independent per-item seeds drawn from one task seed."""
    rng = np.random.default_rng(int(seed))
    return [int(x) for x in rng.integers(0, 2**31 - 1, size=int(count))]


def random_pair(rng: np.random.Generator, box: DomainBox, *, min_gap: float = 0.1) -> tuple[tuple[float, float], tuple[float, float]]:
    """Two points of the box whose S and V each differ by at least min_gap of the box width."""
    (s_lo, s_hi), (v_lo, v_hi) = box.s_range, box.v_range
    while True:
        s0, s1 = (float(x) for x in rng.uniform(s_lo, s_hi, size=2))
        v0, v1 = (float(x) for x in rng.uniform(v_lo, v_hi, size=2))
        if abs(s1 - s0) >= min_gap * (s_hi - s_lo) and abs(v1 - v0) >= min_gap * (v_hi - v_lo):
            return (s0, v0), (s1, v1)


def collect_seeds(params: dict[str, Any], prefix: str = "") -> dict[str, int]:
    out: dict[str, int] = {}
    for key, value in params.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            out.update(collect_seeds(value, prefix=f"{name}."))
        elif key == "seed" and isinstance(value, int):
            out[name] = value
    return out
