"""Fixed-endpoint Fourier deformations: the action must not move, the work integral must."""

from __future__ import annotations

from calculus.forms import work_form
from jobs.common import TaskContext
from jobs.reporting import CheckSpec, Record, VerificationReport
from lagrangian.action import variational_check
from paths.curves import PathFamily, PathGenerator, segment
from utils.config import StrictModel
from utils.logging import get_logger


logger = get_logger(component="jobs_variational_sweep")

TASK = "variational-sweep"
RANDOMIZED = True


class Params(StrictModel):
    seed: int
    start: tuple[float, float] = (0.0, 1.0)
    end: tuple[float, float] = (1.0, 2.0)
    count: int = 10
    amplitude: float = 0.1
    modes: int = 5
    delta_tolerance: float | None = None
    contrast_threshold: float = 1e-3


EXAMPLE_PARAMS = {"seed": 3, "count": 10, "amplitude": 0.1}


def run(ctx: TaskContext, params: Params) -> list[VerificationReport]:
    base = segment(params.start, params.end, label="base")
    family = PathFamily(
        generator=PathGenerator.FOURIER_PERTURBED,
        seed=params.seed,
        count=params.count,
        amplitude=params.amplitude,
        modes=params.modes,
    )
    exact = variational_check(ctx.model, base, family, tolerances=ctx.tolerances)
    contrast = variational_check(ctx.model, base, family, form=work_form(ctx.model), tolerances=ctx.tolerances)

    records: list[Record] = [
        {
            "id": f"path{k}",
            "amplitude": u.perturbation_amplitude,
            "action_before": u.action_before,
            "action_after": u.action_after,
            "delta_u": u.delta,
            "delta_w": w.delta,
        }
        for k, (u, w) in enumerate(zip(exact, contrast))
    ]
    tol = params.delta_tolerance if params.delta_tolerance is not None else 10.0 * ctx.tolerances.quad_abs
    report = ctx.report(
        None,
        records,
        [CheckSpec("delta_u", tol), CheckSpec("delta_w", params.contrast_threshold, bound="max_ge")],
    )
    logger.info("variational_sweep_done", paths=len(records), passed=report.passed, max_delta_u=report.max_residual)
    return [report]
