from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from functools import lru_cache

from core.charts import Chart, StatePoint
from core.errors import DomainError, InversionError, PathError, UnreachableConstraintError
from core.tolerances import DEFAULT_TOLERANCES, Tolerances
from eos.inversion import invert_to_chart, to_sv, volume_at_temperature
from eos.models import EosModel
from paths.curves import Path, segment
from utils.logging import get_logger


logger = get_logger(component="cycles")


class SegmentKind(str, Enum):
    ISENTROPIC = "isentropic"
    ISOCHORIC = "isochoric"
    ISOTHERMAL = "isothermal"
    ISOBARIC = "isobaric"
    GENERAL = "general"


@dataclass(frozen=True)
class Segment:
    kind: SegmentKind
    start: StatePoint
    end: StatePoint
    path: Path
    # Constant T (isothermal) or P (isobaric) held along the segment.
    level: float | None = None

    def reversed(self) -> "Segment":
        return replace(self, start=self.end, end=self.start, path=self.path.reversed())


def _start_sv(model: EosModel, start: StatePoint | tuple[float, float], tolerances: Tolerances) -> tuple[float, float]:
    if isinstance(start, StatePoint):
        try:
            sv = to_sv(model, start, tolerances=tolerances)
        except InversionError as e:
            raise UnreachableConstraintError(f"Start point {start.as_dict()} is not reachable in the domain box: {e}") from e
        s, v = sv.c1, sv.c2
    else:
        s, v = float(start[0]), float(start[1])
    model.check_point(s, v)
    return s, v


def _on_level_curve(
    model: EosModel, kind: SegmentKind, s0: float, s1: float, level: float, tolerances: Tolerances, *, v_start: float | None = None
) -> Path:
    """S runs linearly from s0 to s1; V(S) solves T(S, V) = level or P(S, V) = level."""

    @lru_cache(maxsize=4096)
    def volume(s: float) -> float:
        if kind is SegmentKind.ISOTHERMAL:
            return volume_at_temperature(model, s, level, tolerances=tolerances)
        return invert_to_chart(model, Chart.SP, (s, level), tolerances=tolerances).c2

    ds = s1 - s0

    def s_of_t(t: float) -> float:
        return (1.0 - t) * s0 + t * s1

    def v_of_t(t: float) -> float:
        if t <= 0.0 and v_start is not None:
            return v_start
        return volume(s_of_t(t))

    def dv_dt(t: float) -> float:
        s = s_of_t(t)
        v = volume(s)
        # Implicit differentiation of the level condition along S.
        if kind is SegmentKind.ISOTHERMAL:
            g_s, g_v = model.temperature_gradient(s, v)
        else:
            g_s, g_v = model.pressure_gradient(s, v)
        return -(g_s / g_v) * ds

    return Path(s_of_t=s_of_t, v_of_t=v_of_t, ds_dt=lambda _t: ds, dv_dt=dv_dt, label=f"{kind.value}@{level:.6g}")


def build_segment(
    model: EosModel,
    kind: SegmentKind | str,
    start: StatePoint | tuple[float, float],
    target: float | StatePoint | tuple[float, float],
    *,
    level: float | None = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> Segment:
    """
    A process segment from `start`.

    The target is the final V for isentropic segments, the final S for isochoric,
    isothermal and isobaric ones, and the final (S, V) point for general (straight)
    segments. Isothermal and isobaric segments hold `level` (default: T or P at the
    start); with an explicit level the start slides along its isentrope onto that level,
    and a warning is logged when that moves it.
    Raises UnreachableConstraintError when the constraint cannot be met in the box.
    """
    kind = SegmentKind(kind)
    s0, v0 = _start_sv(model, start, tolerances)

    if kind is SegmentKind.GENERAL:
        if isinstance(target, StatePoint):
            end_sv = _start_sv(model, target, tolerances)
        elif isinstance(target, (tuple, list)):
            end_sv = (float(target[0]), float(target[1]))
        else:
            raise DomainError("A general segment needs an (S, V) end point as its target")
        path = segment((s0, v0), end_sv, label="general")
    elif isinstance(target, (StatePoint, tuple, list)):
        raise DomainError(f"A {kind.value} segment takes a single coordinate as its target")
    elif kind is SegmentKind.ISENTROPIC:
        path = segment((s0, v0), (s0, float(target)), label="isentropic")
    elif kind is SegmentKind.ISOCHORIC:
        path = segment((s0, v0), (float(target), v0), label="isochoric")
    else:
        explicit_level = level
        own = float(model.temperature(s0, v0) if kind is SegmentKind.ISOTHERMAL else model.pressure(s0, v0))
        if level is None:
            level = own
        if not level > 0.0:
            raise UnreachableConstraintError(f"{kind.value} level must be > 0, got {level}")
        if explicit_level is not None and abs(level - own) > tolerances.deriv_rel * max(1.0, abs(own)):
            logger.warning(
                "segment_start_moved",
                kind=kind.value,
                start=(s0, v0),
                start_level=own,
                level=float(level),
            )
        # Without an explicit level the start point is kept exactly.
        pinned = v0 if explicit_level is None else None
        path = _on_level_curve(model, kind, s0, float(target), float(level), tolerances, v_start=pinned)

    try:
        path.check_in_domain(model.domain)
        (sa, va), (sb, vb) = path.start, path.end
    except (PathError, InversionError, DomainError) as e:
        raise UnreachableConstraintError(f"{kind.value} segment from ({s0:.6g}, {v0:.6g}) cannot reach {target}: {e}") from e
    logger.debug("segment_built", kind=kind.value, start=(sa, va), end=(sb, vb), level=level)
    return Segment(kind=kind, start=StatePoint.sv(sa, va), end=StatePoint.sv(sb, vb), path=path, level=level)


def carnot_cycle(
    model: EosModel,
    t_hot: float,
    t_cold: float,
    s_low: float,
    s_high: float,
    *,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> list[Segment]:
    """Hot isotherm S: s_low -> s_high, isentropic expansion, cold isotherm back, isentropic compression."""
    if not t_hot > t_cold > 0.0:
        raise DomainError(f"Carnot cycle needs t_hot > t_cold > 0, got {t_hot}, {t_cold}")
    if not s_high > s_low:
        raise DomainError(f"Carnot cycle needs s_high > s_low, got {s_low}, {s_high}")

    try:
        v_a = volume_at_temperature(model, s_low, t_hot, tolerances=tolerances)
        v_c = volume_at_temperature(model, s_high, t_cold, tolerances=tolerances)
    except InversionError as e:
        raise UnreachableConstraintError(f"Carnot corner outside the domain box: {e}") from e

    hot = build_segment(model, SegmentKind.ISOTHERMAL, (s_low, v_a), s_high, level=t_hot, tolerances=tolerances)
    expand = build_segment(model, SegmentKind.ISENTROPIC, hot.end, v_c, tolerances=tolerances)
    cold = build_segment(model, SegmentKind.ISOTHERMAL, expand.end, s_low, level=t_cold, tolerances=tolerances)
    compress = build_segment(model, SegmentKind.ISENTROPIC, cold.end, v_a, tolerances=tolerances)
    return [hot, expand, cold, compress]


def reverse_cycle(segments: list[Segment]) -> list[Segment]:
    return [seg.reversed() for seg in reversed(segments)]
