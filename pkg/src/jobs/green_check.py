"""Loop integrals against region integrals of the exterior derivative on random rectangles."""

from __future__ import annotations

from typing import Literal

import numpy as np

from calculus.forms import OneForm, exterior_derivative, heat_form, random_polynomial_form, work_form
from eos.models import DomainBox
from jobs.common import BoxSpec, TaskContext
from jobs.reporting import CheckSpec, Record, VerificationReport
from lagrangian.oneform import LagrangianOneForm
from paths.curves import rectangle_loop
from paths.integrals import Region, loop_integral, region_integral
from utils.config import StrictModel
from utils.logging import get_logger


logger = get_logger(component="jobs_green_check")

TASK = "green-check"
RANDOMIZED = True

FormName = Literal["heat", "work", "lagrangian", "lagrangian_components"]


class Params(StrictModel):
    seed: int
    box: BoxSpec = BoxSpec()
    forms: list[FormName] = ["heat", "work", "lagrangian", "lagrangian_components"]
    rectangles: int = 3
    random_forms: int = 20
    degree: int = 3
    tolerance: float = 1e-8


EXAMPLE_PARAMS = {"seed": 13, "rectangles": 2, "random_forms": 5}


def _model_form(ctx: TaskContext, name: str) -> OneForm:
    if name == "heat":
        return heat_form(ctx.model)
    if name == "work":
        return work_form(ctx.model)
    lag = LagrangianOneForm(ctx.model)
    return lag.as_chart_form() if name == "lagrangian" else lag.component_sum_form()


def _random_rectangle(rng: np.random.Generator, box: DomainBox, *, min_frac: float = 0.05) -> tuple[tuple[float, float], tuple[float, float]]:
    out = []
    for lo, hi in (box.s_range, box.v_range):
        while True:
            a, b = sorted(float(x) for x in rng.uniform(lo, hi, size=2))
            if b - a >= min_frac * (hi - lo):
                out.append((a, b))
                break
    return out[0], out[1]


def _record(ctx: TaskContext, record_id: str, form: OneForm, s_range: tuple[float, float], v_range: tuple[float, float]) -> Record:
    loop = loop_integral(form, rectangle_loop(s_range, v_range), tolerances=ctx.tolerances)
    region = region_integral(exterior_derivative(form, mode=ctx.mode), Region.rectangle(s_range, v_range), tolerances=ctx.tolerances)
    return {
        "id": record_id,
        "form": form.label,
        "s0": s_range[0],
        "s1": s_range[1],
        "v0": v_range[0],
        "v1": v_range[1],
        "loop": loop,
        "region": region,
        "gap": loop - region,
    }


def run(ctx: TaskContext, params: Params) -> list[VerificationReport]:
    rng = np.random.default_rng(params.seed)
    box = params.box.to_box()
    records: list[Record] = []

    for name in params.forms:
        form = _model_form(ctx, name)
        for k in range(params.rectangles):
            s_range, v_range = _random_rectangle(rng, box)
            records.append(_record(ctx, f"{name}.{k}", form, s_range, v_range))

    for k in range(params.random_forms):
        form = random_polynomial_form(rng, degree=params.degree, label=f"poly{k}")
        s_range, v_range = _random_rectangle(rng, box)
        records.append(_record(ctx, f"poly.{k}", form, s_range, v_range))

    report = ctx.report(None, records, [CheckSpec("gap", params.tolerance)])
    logger.info("green_checked", records=len(records), passed=report.passed, max_gap=report.max_residual)
    return [report]
