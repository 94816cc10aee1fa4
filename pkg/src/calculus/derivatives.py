from __future__ import annotations

import math
from enum import Enum
from typing import Callable, Union

import numpy as np

from calculus.dual import Dual, Scalar, dual_part
from core.charts import StatePoint
from core.errors import SingularChartError
from core.tolerances import DEFAULT_TOLERANCES, Tolerances
from eos.inversion import to_sv
from eos.models import EosModel, Gradient


class DerivativeMode(str, Enum):
    ANALYTIC = "analytic"
    DUAL_NUMBER = "dual_number"
    CENTRAL_DIFFERENCE = "central_difference"


# Relative central-difference step: h = cbrt(machine eps) * max(1, |x|).
FD_STEP = float(np.cbrt(np.finfo(float).eps))

# |det| below this fraction of |grad X| * |grad Y| counts as a singular chart change.
SINGULAR_RATIO = 1e-12

ScalarFunction = Callable[[Scalar, Scalar], Scalar]
Quantity = Union[str, ScalarFunction]


def _f(model: EosModel, s: Scalar, v: Scalar) -> Scalar:
    return model.energy(s, v) - model.temperature(s, v) * s


def _h(model: EosModel, s: Scalar, v: Scalar) -> Scalar:
    return model.energy(s, v) + model.pressure(s, v) * v


def _g(model: EosModel, s: Scalar, v: Scalar) -> Scalar:
    return model.energy(s, v) - model.temperature(s, v) * s + model.pressure(s, v) * v


QUANTITIES: dict[str, Callable[[EosModel, Scalar, Scalar], Scalar]] = {
    "S": lambda _m, s, _v: s,
    "V": lambda _m, _s, v: v,
    "U": lambda m, s, v: m.energy(s, v),
    "T": lambda m, s, v: m.temperature(s, v),
    "P": lambda m, s, v: m.pressure(s, v),
    "F": _f,
    "H": _h,
    "G": _g,
}


def _bind(model: EosModel | None, quantity: Quantity) -> ScalarFunction:
    if callable(quantity):
        return quantity
    if quantity not in QUANTITIES:
        raise KeyError(f"Unknown quantity {quantity!r}; known: {sorted(QUANTITIES)}")
    if model is None and quantity not in ("S", "V"):
        raise ValueError(f"Quantity {quantity} needs a model")
    fn = QUANTITIES[quantity]
    return lambda s, v: fn(model, s, v)  # type: ignore[arg-type]


def quantity_value(model: EosModel | None, quantity: Quantity, s: float, v: float) -> float:
    return float(_bind(model, quantity)(s, v))  # type: ignore[arg-type]


def _analytic_gradient(model: EosModel, name: str, s: float, v: float) -> Gradient:
    if name == "S":
        return (1.0, 0.0)
    if name == "V":
        return (0.0, 1.0)
    if name == "U":
        return model.energy_gradient(s, v)
    if name == "T":
        return model.temperature_gradient(s, v)
    if name == "P":
        return model.pressure_gradient(s, v)

    u_s, u_v = model.energy_gradient(s, v)
    t = float(model.temperature(s, v))
    p = float(model.pressure(s, v))
    t_s, t_v = model.temperature_gradient(s, v)
    p_s, p_v = model.pressure_gradient(s, v)
    # Product rule on F = U - TS, H = U + PV, G = F + PV.
    f_grad = (u_s - s * t_s - t, u_v - s * t_v)
    pv_grad = (v * p_s, v * p_v + p)
    if name == "F":
        return f_grad
    if name == "H":
        return (u_s + pv_grad[0], u_v + pv_grad[1])
    if name == "G":
        return (f_grad[0] + pv_grad[0], f_grad[1] + pv_grad[1])
    raise KeyError(name)


def _dual_gradient(fn: ScalarFunction, s: float, v: float) -> Gradient:
    return (dual_part(fn(Dual(s, 1.0), v)), dual_part(fn(s, Dual(v, 1.0))))


def _central_gradient(fn: ScalarFunction, s: float, v: float) -> Gradient:
    hs = FD_STEP * max(1.0, abs(s))
    hv = FD_STEP * max(1.0, abs(v))
    d_s = (float(fn(s + hs, v)) - float(fn(s - hs, v))) / (2.0 * hs)  # type: ignore[arg-type]
    d_v = (float(fn(s, v + hv)) - float(fn(s, v - hv))) / (2.0 * hv)  # type: ignore[arg-type]
    return (d_s, d_v)


def gradient(
    model: EosModel | None,
    quantity: Quantity,
    s: float,
    v: float,
    *,
    mode: DerivativeMode = DerivativeMode.ANALYTIC,
) -> Gradient:
    """(d/dS, d/dV) of a named quantity (or a plain function of (S, V)) at an (S, V) point."""
    mode = DerivativeMode(mode)
    if mode is DerivativeMode.ANALYTIC and isinstance(quantity, str) and model is not None and model.has_analytic_derivatives:
        return _analytic_gradient(model, quantity, float(s), float(v))
    fn = _bind(model, quantity)
    if mode is DerivativeMode.CENTRAL_DIFFERENCE:
        return _central_gradient(fn, float(s), float(v))
    return _dual_gradient(fn, float(s), float(v))


def _sv(model: EosModel | None, pt: StatePoint | tuple[float, float], tolerances: Tolerances) -> tuple[float, float]:
    if isinstance(pt, StatePoint):
        if model is None:
            return pt.c1, pt.c2
        sv = to_sv(model, pt, tolerances=tolerances)
        return sv.c1, sv.c2
    return float(pt[0]), float(pt[1])


def _det(a: Gradient, b: Gradient) -> float:
    return a[0] * b[1] - a[1] * b[0]


def jacobian(
    model: EosModel | None,
    pair: tuple[Quantity, Quantity],
    s: float,
    v: float,
    *,
    mode: DerivativeMode = DerivativeMode.ANALYTIC,
) -> float:
    """d(A, B)/d(S, V) at an (S, V) point."""
    return _det(gradient(model, pair[0], s, v, mode=mode), gradient(model, pair[1], s, v, mode=mode))


def wedge_ratio(
    model: EosModel | None,
    numerator: tuple[Quantity, Quantity],
    denominator: tuple[Quantity, Quantity],
    pt: StatePoint | tuple[float, float],
    *,
    mode: DerivativeMode = DerivativeMode.ANALYTIC,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """
    d(A, B)/d(X, Y) as the quotient of two (S, V) Jacobian determinants.

    This is the numerically checkable reading of dividing the 2-form dA^dB by dX^dY.
    """
    s, v = _sv(model, pt, tolerances)
    gx = gradient(model, denominator[0], s, v, mode=mode)
    gy = gradient(model, denominator[1], s, v, mode=mode)
    den = _det(gx, gy)
    if abs(den) <= SINGULAR_RATIO * math.hypot(*gx) * math.hypot(*gy) or den == 0.0:
        raise SingularChartError(f"d({denominator[0]},{denominator[1]})/d(S,V) vanishes at ({s:.6g}, {v:.6g})")
    return jacobian(model, numerator, s, v, mode=mode) / den


def partial(
    model: EosModel | None,
    quantity: Quantity,
    wrt: Quantity,
    held: Quantity,
    pt: StatePoint | tuple[float, float],
    *,
    mode: DerivativeMode = DerivativeMode.ANALYTIC,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    quantity_mode: DerivativeMode | None = None,
) -> float:
    """
    (dQ/dX)_Y: derivative of `quantity` along `wrt` with `held` fixed.

    The (S, V) displacement that moves X by one unit at constant Y is found with a
    2x2 linear solve; the result is the directional derivative of Q along it.
    `quantity_mode` differentiates Q with another mode than the chart (e.g. central
    differences of a function that is not dual-safe).
    """
    s, v = _sv(model, pt, tolerances)
    gx = gradient(model, wrt, s, v, mode=mode)
    gy = gradient(model, held, s, v, mode=mode)
    if abs(_det(gx, gy)) <= SINGULAR_RATIO * math.hypot(*gx) * math.hypot(*gy):
        raise SingularChartError(f"({wrt}, {held}) is not a chart at ({s:.6g}, {v:.6g})")
    try:
        d = np.linalg.solve(np.array([gx, gy], dtype=float), np.array([1.0, 0.0]))
    except np.linalg.LinAlgError as e:
        raise SingularChartError(f"({wrt}, {held}) is not a chart at ({s:.6g}, {v:.6g})") from e
    gq = gradient(model, quantity, s, v, mode=quantity_mode or mode)
    return float(gq[0] * d[0] + gq[1] * d[1])
