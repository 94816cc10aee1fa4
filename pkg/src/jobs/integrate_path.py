"""Path independence of the action over seeded path families, and the loop law on a rectangle."""

from __future__ import annotations

import numpy as np

from calculus.forms import differential_form, heat_form, work_form
from jobs.common import BoxSpec, TaskContext, child_seeds, random_pair
from jobs.reporting import CheckSpec, Record, VerificationReport
from lagrangian.action import action
from paths.curves import PathFamily, PathGenerator, generate_paths, rectangle_loop
from paths.integrals import loop_integral
from utils.config import StrictModel
from utils.logging import get_logger


logger = get_logger(component="jobs_integrate_path")

TASK = "integrate-path"
RANDOMIZED = True

Point = tuple[float, float]

SPREAD_FLOOR = 1e-12


class LoopSpec(StrictModel):
    s_range: tuple[float, float] = (0.0, 1.0)
    v_range: tuple[float, float] = (1.0, 2.0)
    # Closed-form value of the loop integral of T dS, when one is known.
    expected_heat: float | None = None
    heat_tolerance: float = 1e-4


class Params(StrictModel):
    seed: int
    pairs: int = 50
    paths_per_pair: int = 10
    generator: PathGenerator = PathGenerator.FOURIER_PERTURBED
    amplitude: float = 0.1
    box: BoxSpec = BoxSpec()
    endpoints: list[tuple[Point, Point]] = []
    spread_tolerance: float = 1e-8
    oracle_tolerance: float = 1e-8
    loop: LoopSpec | None = LoopSpec()
    loop_tolerance: float | None = None


EXAMPLE_PARAMS = {"seed": 11, "pairs": 5, "paths_per_pair": 4, "endpoints": [[[0.0, 1.0], [1.0, 2.0]]]}


def _pair_records(ctx: TaskContext, params: Params) -> list[Record]:
    rng = np.random.default_rng(params.seed)
    box = params.box.to_box()
    pairs = [(tuple(a), tuple(b)) for a, b in params.endpoints]
    pairs += [random_pair(rng, box) for _ in range(params.pairs)]
    seeds = child_seeds(params.seed, len(pairs))

    records: list[Record] = []
    for k, ((start, end), seed) in enumerate(zip(pairs, seeds)):
        family = PathFamily(generator=params.generator, seed=seed, count=params.paths_per_pair, amplitude=params.amplitude)
        paths = generate_paths(family, (start, end), domain=ctx.model.domain)
        values = [action(ctx.model, p, tolerances=ctx.tolerances) for p in paths]
        delta_u = float(ctx.model.energy(*end)) - float(ctx.model.energy(*start))
        lo, hi = min(values), max(values)
        records.append(
            {
                "id": f"pair{k}",
                "s0": float(start[0]),
                "v0": float(start[1]),
                "s1": float(end[0]),
                "v1": float(end[1]),
                "delta_u": delta_u,
                "action_min": lo,
                "action_max": hi,
                # Relative to |dU|; the floor only guards an exactly isoenergetic pair.
                "spread_rel": (hi - lo) / max(abs(delta_u), SPREAD_FLOOR),
                "oracle_gap": max(abs(x - delta_u) for x in values),
            }
        )
    return records


def _loop_record(ctx: TaskContext, loop: LoopSpec) -> Record:
    rect = rectangle_loop(loop.s_range, loop.v_range)
    kw = {"tolerances": ctx.tolerances, "domain": ctx.model.domain}
    du = loop_integral(differential_form(ctx.model), rect, **kw)
    heat = loop_integral(heat_form(ctx.model), rect, **kw)
    pdv = -loop_integral(work_form(ctx.model), rect, **kw)
    heat_reversed = loop_integral(heat_form(ctx.model), rect.reversed(), **kw)
    record: Record = {
        "id": "rect",
        "du_loop": du,
        "heat_loop": heat,
        "pdv_loop": pdv,
        "heat_minus_pdv": heat - pdv,
        "orientation_gap": heat + heat_reversed,
    }
    if loop.expected_heat is not None:
        record["heat_oracle_gap"] = heat - loop.expected_heat
    return record


def run(ctx: TaskContext, params: Params) -> list[VerificationReport]:
    records = _pair_records(ctx, params)
    reports = [
        ctx.report(
            "pairs",
            records,
            [CheckSpec("spread_rel", params.spread_tolerance), CheckSpec("oracle_gap", params.oracle_tolerance)],
        )
    ]
    if params.loop is not None:
        tol = params.loop_tolerance if params.loop_tolerance is not None else 10.0 * ctx.tolerances.quad_abs
        checks = [CheckSpec("du_loop", tol), CheckSpec("heat_minus_pdv", tol), CheckSpec("orientation_gap", tol)]
        if params.loop.expected_heat is not None:
            checks.append(CheckSpec("heat_oracle_gap", params.loop.heat_tolerance))
        reports.append(ctx.report("loop", [_loop_record(ctx, params.loop)], checks))
    logger.info("paths_integrated", pairs=len(records), passed=all(r.passed for r in reports))
    return reports
