from __future__ import annotations

from dataclasses import dataclass

from calculus.forms import differential_form
from core.errors import CycleNotClosedError, FirstLawViolationError
from core.tolerances import DEFAULT_TOLERANCES, Tolerances
from cycles.segments import Segment
from eos.models import EosModel
from paths.integrals import line_integral, quad_unit_interval
from utils.logging import get_logger


logger = get_logger(component="cycles")

# Consecutive segments must meet this closely (scaled by max(1, |x|)).
CHAIN_TOL = 1e-12

# |loop dU| may not exceed this fraction of |loop T dS| + |loop P dV|.
FIRST_LAW_REL = 1e-8


@dataclass(frozen=True)
class CycleReport:
    q_in: float
    q_out: float
    w_net: float
    efficiency: float
    first_law_residual: float
    heat_net: float
    segments: int

    @property
    def first_law_bound(self) -> float:
        return FIRST_LAW_REL * (abs(self.heat_net) + abs(self.w_net))


def _meets(a: tuple[float, float], b: tuple[float, float]) -> bool:
    return all(abs(x - y) <= CHAIN_TOL * max(1.0, abs(x), abs(y)) for x, y in zip(a, b))


def check_chain(segments: list[Segment]) -> None:
    if not segments:
        raise CycleNotClosedError("A cycle needs at least one segment")
    ring = list(zip(segments, segments[1:] + segments[:1]))
    for k, (a, b) in enumerate(ring):
        if not _meets(a.end.coords, b.start.coords):
            what = "does not close" if k == len(segments) - 1 else f"breaks after segment {k}"
            raise CycleNotClosedError(f"Cycle {what}: {a.end.as_dict()} -> {b.start.as_dict()}")


def _segment_integrals(model: EosModel, seg: Segment, tolerances: Tolerances) -> tuple[float, float, float, float]:
    path = seg.path

    def heat_rate(t: float) -> float:
        ds = path.ds_dt(t)
        if ds == 0.0:
            return 0.0
        s, v = path.s_of_t(t), path.v_of_t(t)
        return float(model.temperature(s, v)) * ds

    def work_rate(t: float) -> float:
        dv = path.dv_dt(t)
        if dv == 0.0:
            return 0.0
        s, v = path.s_of_t(t), path.v_of_t(t)
        return float(model.pressure(s, v)) * dv

    kw = {"breakpoints": path.breakpoints, "tolerances": tolerances}
    q_in = quad_unit_interval(lambda t: max(heat_rate(t), 0.0), label=f"Q_in {path.label}", **kw)
    q_out = quad_unit_interval(lambda t: max(-heat_rate(t), 0.0), label=f"Q_out {path.label}", **kw)
    work = quad_unit_interval(work_rate, label=f"W {path.label}", **kw)
    du = line_integral(differential_form(model), path, tolerances=tolerances)
    return q_in, q_out, work, du


def run_cycle(
    model: EosModel,
    segments: list[Segment],
    *,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    check: bool = True,
) -> CycleReport:
    """
    Heat and work bookkeeping around a closed chain of segments.

    Q_in/Q_out integrate T dS where dS > 0 / dS < 0; W_net is the loop integral of P dV.
    With `check`, a loop integral of dU above max(1e-8 * (|loop T dS| + |loop P dV|),
    10 * quad_abs) raises FirstLawViolationError.
    """
    check_chain(segments)
    q_in = q_out = w_net = du = 0.0
    for seg in segments:
        qi, qo, w, d = _segment_integrals(model, seg, tolerances)
        q_in += qi
        q_out += qo
        w_net += w
        du += d

    heat_net = q_in - q_out
    report = CycleReport(
        q_in=q_in,
        q_out=q_out,
        w_net=w_net,
        efficiency=w_net / q_in if q_in != 0.0 else 0.0,
        first_law_residual=abs(du),
        heat_net=heat_net,
        segments=len(segments),
    )
    bound = max(report.first_law_bound, 10.0 * tolerances.quad_abs)
    if check and report.first_law_residual > bound:
        raise FirstLawViolationError(
            f"loop dU = {du:.3e} exceeds {bound:.3e} (loop T dS = {heat_net:.12g}, loop P dV = {w_net:.12g})",
            residual=report.first_law_residual,
        )
    logger.debug("cycle_done", segments=len(segments), q_in=q_in, q_out=q_out, w_net=w_net, first_law_residual=report.first_law_residual)
    return report
