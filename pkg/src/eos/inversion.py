from __future__ import annotations

import math
from typing import Callable

from core.charts import Chart, StatePoint
from core.errors import DomainError, NoConvergenceError, NonBracketedRootError, NonMonotoneError
from core.tolerances import DEFAULT_TOLERANCES, Tolerances
from eos.models import DomainBox, EosModel
from utils.logging import get_logger


logger = get_logger(component="eos_inversion")

# Inner entropy solves may step this far outside the box (relative to its width);
# the final point is still required to lie inside the box.
_S_MARGIN = 1e-6


def newton_bisect(
    func: Callable[[float], tuple[float, float]],
    lo: float,
    hi: float,
    *,
    tol: float,
    max_iter: int,
    label: str = "root",
) -> float:
    """
    Safeguarded Newton iteration on a bracket [lo, hi].

    `func(x)` returns (f, df). A Newton step is taken when it stays inside the current
    bracket and shrinks the residual fast enough, otherwise the bracket is bisected.
    Converged when the last step is below `tol`.
    """
    f_lo, _ = func(lo)
    f_hi, _ = func(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if (f_lo > 0.0) == (f_hi > 0.0):
        raise NonBracketedRootError(f"{label}: no sign change on [{lo:.6g}, {hi:.6g}] (f={f_lo:.3g}, {f_hi:.3g})")

    # Orient so that f(x_neg) < 0 < f(x_pos).
    x_neg, x_pos = (lo, hi) if f_lo < 0.0 else (hi, lo)
    x = 0.5 * (lo + hi)
    dx_old = abs(hi - lo)
    dx = dx_old
    f, df = func(x)

    for _ in range(int(max_iter)):
        newton_out_of_range = ((x - x_pos) * df - f) * ((x - x_neg) * df - f) >= 0.0
        too_slow = abs(2.0 * f) > abs(dx_old * df)
        if df == 0.0 or newton_out_of_range or too_slow:
            dx_old = dx
            dx = 0.5 * (x_pos - x_neg)
            x = x_neg + dx
        else:
            dx_old = dx
            dx = f / df
            x = x - dx

        if abs(dx) < tol:
            return x

        f, df = func(x)
        if f == 0.0:
            return x
        if f < 0.0:
            x_neg = x
        else:
            x_pos = x

    logger.warning("newton_no_convergence", label=label, max_iter=int(max_iter), last_x=x)
    raise NoConvergenceError(f"{label}: no convergence after {max_iter} iterations (last x={x:.12g})", iterations=int(max_iter))


def _box(model: EosModel, box: DomainBox | None) -> DomainBox:
    return box or model.domain


def _require_increasing_t(model: EosModel, s: float, v: float) -> None:
    t_s, _ = model.temperature_gradient(s, v)
    if not t_s > 0.0:
        raise NonMonotoneError(f"T not increasing in S at ({s:.6g}, {v:.6g}): dT/dS={t_s:.3g}")


def _require_decreasing_p(model: EosModel, s: float, v: float) -> None:
    _, p_v = model.pressure_gradient(s, v)
    if not p_v < 0.0:
        raise NonMonotoneError(f"P not decreasing in V at ({s:.6g}, {v:.6g}): dP/dV={p_v:.3g}")


def entropy_at_temperature(
    model: EosModel, v: float, t_target: float, *, tolerances: Tolerances = DEFAULT_TOLERANCES, box: DomainBox | None = None, margin: float = 0.0
) -> float:
    """Solve T(S, v) = t_target for S inside the box (log residual, T increasing in S)."""
    b = _box(model, box)
    s_lo, s_hi = b.s_range
    pad = margin * (s_hi - s_lo)
    log_t = math.log(t_target)

    def f(s: float) -> tuple[float, float]:
        t = float(model.temperature(s, v))
        t_s, _ = model.temperature_gradient(s, v)
        return math.log(t) - log_t, t_s / t

    s = newton_bisect(f, s_lo - pad, s_hi + pad, tol=tolerances.newton_tol, max_iter=tolerances.max_newton_iter, label="entropy_at_temperature")
    _require_increasing_t(model, s, v)
    return s


def volume_at_temperature(
    model: EosModel, s: float, t_target: float, *, tolerances: Tolerances = DEFAULT_TOLERANCES, box: DomainBox | None = None
) -> float:
    """Solve T(s, V) = t_target for V inside the box (T decreasing in V along S = const)."""
    b = _box(model, box)
    log_t = math.log(t_target)

    def f(v: float) -> tuple[float, float]:
        t = float(model.temperature(s, v))
        _, t_v = model.temperature_gradient(s, v)
        return math.log(t) - log_t, t_v / t

    return newton_bisect(f, b.v_range[0], b.v_range[1], tol=tolerances.newton_tol, max_iter=tolerances.max_newton_iter, label="volume_at_temperature")


def volume_at_pressure(
    model: EosModel, s: float, p_target: float, *, tolerances: Tolerances = DEFAULT_TOLERANCES, box: DomainBox | None = None
) -> float:
    """Solve P(s, V) = p_target for V inside the box (P decreasing in V along S = const)."""
    b = _box(model, box)
    log_p = math.log(p_target)

    def f(v: float) -> tuple[float, float]:
        p = float(model.pressure(s, v))
        if p <= 0.0:
            raise DomainError(f"Non-positive pressure {p:.3g} at ({s:.6g}, {v:.6g})")
        _, p_v = model.pressure_gradient(s, v)
        return math.log(p) - log_p, p_v / p

    v = newton_bisect(f, b.v_range[0], b.v_range[1], tol=tolerances.newton_tol, max_iter=tolerances.max_newton_iter, label="volume_at_pressure")
    _require_decreasing_p(model, s, v)
    return v


def _isotherm_volume_window(model: EosModel, t_target: float, b: DomainBox, tolerances: Tolerances) -> tuple[float, float]:
    # Along S = const, T falls with V; the isotherm crosses S = s_lo at the smallest
    # admissible volume and S = s_hi at the largest.
    (s_lo, s_hi), (v_lo, v_hi) = b.s_range, b.v_range
    for s, v in ((s_lo, v_lo), (s_hi, v_hi)):
        _, t_v = model.temperature_gradient(s, v)
        if not t_v < 0.0:
            raise NonMonotoneError(f"T not decreasing in V at ({s:.6g}, {v:.6g})")

    lo = v_lo
    if float(model.temperature(s_lo, v_lo)) > t_target:
        lo = volume_at_temperature(model, s_lo, t_target, tolerances=tolerances, box=b)
    hi = v_hi
    if float(model.temperature(s_hi, v_hi)) < t_target:
        hi = volume_at_temperature(model, s_hi, t_target, tolerances=tolerances, box=b)
    if lo > hi:
        raise NonBracketedRootError(f"Isotherm T={t_target:.6g} does not cross the domain box")
    return lo, hi


def _invert_tp(model: EosModel, t_target: float, p_target: float, b: DomainBox, tolerances: Tolerances) -> tuple[float, float]:
    v_lo, v_hi = _isotherm_volume_window(model, t_target, b, tolerances)
    log_p = math.log(p_target)

    def along_isotherm(v: float) -> tuple[float, float]:
        s = entropy_at_temperature(model, v, t_target, tolerances=tolerances, box=b, margin=_S_MARGIN)
        p = float(model.pressure(s, v))
        p_s, p_v = model.pressure_gradient(s, v)
        t_s, t_v = model.temperature_gradient(s, v)
        # (dP/dV)_T = P_V - P_S * T_V / T_S
        return math.log(p) - log_p, (p_v - p_s * t_v / t_s) / p

    if v_lo == v_hi:
        v = v_lo
    else:
        v = newton_bisect(along_isotherm, v_lo, v_hi, tol=tolerances.newton_tol, max_iter=tolerances.max_newton_iter, label="invert_tp")
    s = entropy_at_temperature(model, v, t_target, tolerances=tolerances, box=b, margin=_S_MARGIN)
    return s, v


def invert_to_chart(
    model: EosModel,
    target: Chart,
    known: tuple[float, float] | StatePoint,
    *,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    box: DomainBox | None = None,
) -> StatePoint:
    """
    Find the (S, V) point at which `model` takes the given coordinates of chart `target`.

    Raises NonBracketedRootError when the box holds no solution, NoConvergenceError
    when the safeguarded Newton iteration runs out of iterations.
    """
    if isinstance(known, StatePoint):
        if known.chart is not target:
            raise DomainError(f"Point is on chart {known.chart.value}, expected {target.value}")
        c1, c2 = known.c1, known.c2
    else:
        c1, c2 = float(known[0]), float(known[1])
    b = _box(model, box)

    if target is Chart.SV:
        s, v = c1, c2
    elif target is Chart.TV:
        t, v = c1, c2
        if not b.v_range[0] <= v <= b.v_range[1]:
            raise NonBracketedRootError(f"V={v:.6g} outside box {b.v_range}")
        s = entropy_at_temperature(model, v, t, tolerances=tolerances, box=b)
    elif target is Chart.SP:
        s, p = c1, c2
        if not b.s_range[0] <= s <= b.s_range[1]:
            raise NonBracketedRootError(f"S={s:.6g} outside box {b.s_range}")
        v = volume_at_pressure(model, s, p, tolerances=tolerances, box=b)
    elif target is Chart.TP:
        s, v = _invert_tp(model, c1, c2, b, tolerances)
    else:  # pragma: no cover
        raise DomainError(f"Unsupported chart {target}")

    if not b.contains(s, v, slack=_S_MARGIN * (b.s_range[1] - b.s_range[0])):
        raise NonBracketedRootError(f"Solution ({s:.6g}, {v:.6g}) for {target.value}={c1:.6g},{c2:.6g} lies outside the box")
    s = min(max(s, b.s_range[0]), b.s_range[1])
    model.check_point(s, v)
    return StatePoint.sv(s, v)


def to_chart(model: EosModel, pt: StatePoint, chart: Chart) -> StatePoint:
    """Coordinates of an (S, V) point on another chart (forward map of invert_to_chart)."""
    if pt.chart is not Chart.SV:
        raise DomainError(f"to_chart expects an SV point, got {pt.chart.value}")
    s, v = pt.c1, pt.c2
    if chart is Chart.SV:
        return pt
    t = float(model.temperature(s, v))
    if chart is Chart.TV:
        return StatePoint(Chart.TV, t, v)
    p = float(model.pressure(s, v))
    if chart is Chart.TP:
        return StatePoint(Chart.TP, t, p)
    return StatePoint(Chart.SP, s, p)


def to_sv(model: EosModel, pt: StatePoint, *, tolerances: Tolerances = DEFAULT_TOLERANCES) -> StatePoint:
    if pt.chart is Chart.SV:
        return pt
    return invert_to_chart(model, pt.chart, pt, tolerances=tolerances)
