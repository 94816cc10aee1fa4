from __future__ import annotations

from dataclasses import dataclass
from types import ModuleType
from typing import Any, Callable

from pydantic import BaseModel

from jobs import check_maxwell, green_check, integrate_path, run_cycle, variational_sweep, verify_closure
from jobs.common import TaskContext
from jobs.reporting import VerificationReport


TASK_MODULES: tuple[ModuleType, ...] = (
    check_maxwell,
    verify_closure,
    integrate_path,
    variational_sweep,
    run_cycle,
    green_check,
)


@dataclass(frozen=True)
class TaskInfo:
    name: str
    module: str
    description: str
    randomized: bool
    params_model: type[BaseModel]
    run: Callable[[TaskContext, Any], list[VerificationReport]]
    example_params: dict[str, Any]

    def parameters(self) -> dict[str, list[str]]:
        fields = self.params_model.model_fields
        return {
            "required": [k for k, f in fields.items() if f.is_required()],
            "optional": [k for k, f in fields.items() if not f.is_required()],
        }

    def catalog_entry(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "module": self.module,
            "description": self.description,
            "randomized": self.randomized,
            **self.parameters(),
            "schema": self.params_model.model_json_schema(),
            "example_params": self.example_params,
        }


def _info(module: ModuleType) -> TaskInfo:
    return TaskInfo(
        name=module.TASK,
        module=module.__name__,
        description=(module.__doc__ or "").strip().splitlines()[0] if module.__doc__ else "",
        randomized=bool(module.RANDOMIZED),
        params_model=module.Params,
        run=module.run,
        example_params=dict(module.EXAMPLE_PARAMS),
    )


TASKS: dict[str, TaskInfo] = {info.name: info for info in map(_info, TASK_MODULES)}


def get_task(name: str) -> TaskInfo:
    try:
        return TASKS[name]
    except KeyError:
        raise KeyError(f"Unknown task {name!r}; known tasks: {', '.join(TASKS)}") from None


def list_tasks() -> list[dict[str, Any]]:
    """Catalog of the tasks with their module of origin and parameter schemas."""
    return [info.catalog_entry() for info in TASKS.values()]


def example_config() -> dict[str, Any]:
    """A run config exercising every task with its example parameters."""
    return {
        "model": {"name": "ideal_gas"},
        "tasks": [{"task": info.name, "params": dict(info.example_params)} for info in TASKS.values()],
        "output_dir": "reports/example",
    }
