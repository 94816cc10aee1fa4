"""Four Maxwell relations on a grid by the Jacobian, partial-derivative and potential routes."""

from __future__ import annotations

import math
from typing import Callable

from pydantic import field_validator

from calculus.derivatives import DerivativeMode
from core.charts import StatePoint
from core.errors import SingularChartError
from jobs.common import BoxSpec, TaskContext
from jobs.reporting import CheckSpec, Record, VerificationReport
from maxwell.cases import CASES, maxwell_residual_jacobian, maxwell_residual_partials
from maxwell.potentials import NATURAL_FORMS, Potential, maxwell_from_potential
from utils.config import StrictModel
from utils.logging import get_logger


logger = get_logger(component="jobs_check_maxwell")

TASK = "check-maxwell"
RANDOMIZED = False

# Potential whose natural form yields each case.
POTENTIAL_FOR_CASE = {nf.case: kind for kind, nf in NATURAL_FORMS.items()}


class Params(StrictModel):
    grid: BoxSpec = BoxSpec()
    ns: int = 10
    nv: int = 10
    cases: list[int] = [1, 2, 3, 4]
    tolerance: float | None = None
    route_tolerance: float = 1e-9
    # The potential route differences first derivatives numerically once more.
    potential_tolerance: float = 1e-7

    @field_validator("cases")
    @classmethod
    def _known_cases(cls, value: list[int]) -> list[int]:
        bad = [c for c in value if c not in CASES]
        if bad or not value:
            raise ValueError(f"cases must be a non-empty subset of 1..4, got {value}")
        return value


EXAMPLE_PARAMS = {"grid": {"s_range": [0.0, 1.0], "v_range": [1.0, 2.0]}, "ns": 10, "nv": 10}


def _guarded(fn: Callable[[], float]) -> float:
    # A singular chart change at a grid point is recorded as an infinite residual.
    try:
        return fn()
    except SingularChartError:
        return math.inf


def run(ctx: TaskContext, params: Params) -> list[VerificationReport]:
    fd = ctx.mode is DerivativeMode.CENTRAL_DIFFERENCE
    tol = params.tolerance if params.tolerance is not None else (ctx.tolerances.fd_rel if fd else ctx.tolerances.deriv_rel)
    pot_tol = max(params.potential_tolerance, ctx.tolerances.fd_rel) if fd else params.potential_tolerance
    route_tol = max(params.route_tolerance, ctx.tolerances.fd_rel) if fd else params.route_tolerance
    points = params.grid.to_box().grid(params.ns, params.nv)
    kw = {"mode": ctx.mode, "tolerances": ctx.tolerances}
    reports: list[VerificationReport] = []

    for index in params.cases:
        case = CASES[index]
        kind = POTENTIAL_FOR_CASE[index]
        records: list[Record] = []
        for k, (s, v) in enumerate(points):
            jac = _guarded(lambda: maxwell_residual_jacobian(ctx.model, case, (s, v), **kw))
            par = _guarded(lambda: maxwell_residual_partials(ctx.model, case, (s, v), **kw))
            pot = _guarded(lambda: maxwell_from_potential(ctx.model, kind, (s, v), **kw))
            gap = _guarded(lambda: Potential(kind=kind, model=ctx.model, **kw).legendre_gap(StatePoint.sv(s, v)))
            records.append(
                {
                    "id": f"p{k}",
                    "s": s,
                    "v": v,
                    "jacobian": jac,
                    "partials": par,
                    "potential": pot,
                    "route_gap": abs(jac - par) if math.isfinite(jac) and math.isfinite(par) else math.inf,
                    "legendre_gap": gap,
                }
            )
        report = ctx.report(
            f"case{index}",
            records,
            [
                CheckSpec("jacobian", tol),
                CheckSpec("partials", tol),
                CheckSpec("potential", pot_tol),
                CheckSpec("legendre_gap", tol),
                CheckSpec("route_gap", route_tol),
            ],
        )
        logger.info("maxwell_case_checked", case=index, statement=case.statement, potential=kind.value, passed=report.passed, max_residual=report.max_residual)
        reports.append(report)
    return reports
