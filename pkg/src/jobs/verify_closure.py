"""Closure relation against Maxwell case 1, the equilibrium surface, and Euler-Lagrange residuals along random monotone paths."""

from __future__ import annotations

import numpy as np

from core.charts import StatePoint
from eos.models import evaluate
from jobs.common import BoxSpec, TaskContext, child_seeds, random_pair
from jobs.reporting import CheckSpec, Record, VerificationReport
from lagrangian.residuals import closure_residual, equilibrium_surface_residual, euler_lagrange_profile, surface_condition_report
from maxwell.cases import maxwell_residual_partials
from paths.curves import PathFamily, PathGenerator, generate_paths
from utils.config import StrictModel
from utils.logging import get_logger


logger = get_logger(component="jobs_verify_closure")

TASK = "verify-closure"
RANDOMIZED = True


class Params(StrictModel):
    seed: int
    points: int = 100
    paths: int = 10
    points_per_path: int = 5
    box: BoxSpec = BoxSpec()
    tolerance: float | None = None
    agreement_tolerance: float = 1e-12
    euler_lagrange_gap_tolerance: float = 1e-10


EXAMPLE_PARAMS = {"seed": 7, "points": 100, "paths": 10}


def _point_records(ctx: TaskContext, params: Params, rng: np.random.Generator) -> list[Record]:
    kw = {"mode": ctx.mode, "tolerances": ctx.tolerances}
    records: list[Record] = []
    for k, (s, v) in enumerate(params.box.to_box().sample(rng, params.points)):
        closure = closure_residual(ctx.model, (s, v), **kw)
        case1 = maxwell_residual_partials(ctx.model, 1, (s, v), **kw)
        values = evaluate(ctx.model, StatePoint.sv(s, v))
        surf_t, surf_p = equilibrium_surface_residual(ctx.model, (s, v), values.t, values.p, **kw)
        printed = surface_condition_report(ctx.model, (s, v), **kw)
        records.append(
            {
                "id": f"p{k}",
                "s": s,
                "v": v,
                "closure": closure,
                "case1": case1,
                "agreement": abs(closure - case1),
                "surface_t": surf_t,
                "surface_p": surf_p,
                "printed_condition": printed.printed_condition,
            }
        )
    return records


def _path_records(ctx: TaskContext, params: Params, rng: np.random.Generator) -> list[Record]:
    box = params.box.to_box()
    records: list[Record] = []
    for j, seed in enumerate(child_seeds(int(rng.integers(0, 2**31 - 1)), params.paths)):
        start, end = random_pair(rng, box)
        family = PathFamily(generator=PathGenerator.MONOTONE_SPLINE, seed=seed, count=1)
        (path,) = generate_paths(family, (start, end), domain=ctx.model.domain)
        for k, sample in enumerate(euler_lagrange_profile(ctx.model, path, points_per_interval=params.points_per_path, mode=ctx.mode)):
            closure = closure_residual(ctx.model, (sample.s, sample.v), mode=ctx.mode, tolerances=ctx.tolerances)
            records.append(
                {
                    "id": f"path{j}.{k}",
                    "t": sample.t,
                    "s": sample.s,
                    "v": sample.v,
                    "el_v": sample.v_equation,
                    "el_s": sample.s_equation,
                    "el_gap": max(abs(sample.v_equation + closure), abs(sample.s_equation - closure)),
                }
            )
    return records


def run(ctx: TaskContext, params: Params) -> list[VerificationReport]:
    tol = params.tolerance if params.tolerance is not None else ctx.tolerances.deriv_rel
    rng = np.random.default_rng(params.seed)

    points = ctx.report(
        "points",
        _point_records(ctx, params, rng),
        [
            CheckSpec("closure", tol),
            CheckSpec("agreement", params.agreement_tolerance),
            CheckSpec("surface_t", tol),
            CheckSpec("surface_p", tol),
        ],
    )
    paths = ctx.report(
        "euler_lagrange",
        _path_records(ctx, params, rng),
        [
            CheckSpec("el_v", tol),
            CheckSpec("el_s", tol),
            CheckSpec("el_gap", params.euler_lagrange_gap_tolerance),
        ],
    )
    logger.info("closure_verified", points_passed=points.passed, paths_passed=paths.passed)
    return [points, paths]
