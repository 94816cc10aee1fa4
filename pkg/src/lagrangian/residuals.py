from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.optimize import brentq

from calculus.derivatives import DerivativeMode, gradient
from core.charts import StatePoint
from core.errors import NonMonotoneSegmentError
from core.tolerances import DEFAULT_TOLERANCES, Tolerances
from eos.inversion import to_sv
from eos.models import EosModel
from paths.curves import Path


# A tangent component counts as zero below this fraction of the speed.
STALL_RATIO = 1e-12


def _point(model: EosModel, pt: StatePoint | tuple[float, float], tolerances: Tolerances) -> tuple[float, float]:
    if isinstance(pt, StatePoint):
        sv = to_sv(model, pt, tolerances=tolerances)
        return sv.c1, sv.c2
    return float(pt[0]), float(pt[1])


def closure_residual(
    model: EosModel,
    pt: StatePoint | tuple[float, float],
    *,
    mode: DerivativeMode = DerivativeMode.ANALYTIC,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """(dT/dV)_S + (dP/dS)_V: dL_V/dS - dL_S/dV once the slope terms cancel."""
    s, v = _point(model, pt, tolerances)
    _, t_v = gradient(model, "T", s, v, mode=mode)
    p_s, _ = gradient(model, "P", s, v, mode=mode)
    return t_v + p_s


class EulerLagrangeResiduals(NamedTuple):
    v_equation: float
    s_equation: float


def euler_lagrange_residuals(
    model: EosModel,
    gamma: Path,
    t: float,
    *,
    mode: DerivativeMode = DerivativeMode.ANALYTIC,
) -> EulerLagrangeResiduals:
    """
    Residuals of the two Euler-Lagrange equations at gamma(t):

      dL_V/dS - d/dV [dL_V/d(dS/dV)]   with V as the parameter
      dL_S/dV - d/dS [dL_S/d(dV/dS)]   with S as the parameter

    Both need gamma to be strictly monotone in its parameter coordinate at t.
    """
    s, v = gamma.point(t)
    ds, dv = gamma.tangent(t)
    speed = math.hypot(ds, dv)
    if abs(dv) <= STALL_RATIO * speed or abs(ds) <= STALL_RATIO * speed:
        raise NonMonotoneSegmentError(
            f"{gamma.label} is not monotone at t={t:.6g}: dS/dt={ds:.3g}, dV/dt={dv:.3g}"
        )
    sigma = ds / dv  # dS/dV along the path
    mu = dv / ds  # dV/dS along the path

    t_s, t_v = gradient(model, "T", s, v, mode=mode)
    p_s, p_v = gradient(model, "P", s, v, mode=mode)

    # L_V = T sigma - P: partial in S at fixed (V, sigma); momentum T differentiated along V.
    dlv_ds = t_s * sigma - p_s
    d_momentum_v = t_v + t_s * sigma
    # L_S = T - P mu: partial in V at fixed (S, mu); momentum -P differentiated along S.
    dls_dv = t_v - p_v * mu
    d_momentum_s = -(p_s + p_v * mu)

    return EulerLagrangeResiduals(dlv_ds - d_momentum_v, dls_dv - d_momentum_s)


def split_monotone(gamma: Path, *, samples: int = 512, min_width: float = 1e-9) -> list[tuple[float, float]]:
    """
    Parameter intervals on which both S(t) and V(t) are strictly monotone.

    Turning points are sign changes of dS/dt or dV/dt on a sample grid, refined with brentq.
    """
    ts = np.linspace(0.0, 1.0, int(samples) + 1)
    cuts: set[float] = set()
    for deriv in (gamma.ds_dt, gamma.dv_dt):
        values = np.array([deriv(float(t)) for t in ts], dtype=float)
        for i in range(len(ts) - 1):
            a, b = values[i], values[i + 1]
            if a == 0.0 and 0.0 < ts[i] < 1.0:
                cuts.add(float(ts[i]))
            elif a * b < 0.0:
                cuts.add(float(brentq(deriv, float(ts[i]), float(ts[i + 1]), xtol=1e-14)))

    edges = [0.0, *sorted(cuts), 1.0]
    return [(a, b) for a, b in zip(edges, edges[1:]) if b - a > min_width]


@dataclass(frozen=True)
class EulerLagrangeSample:
    t: float
    s: float
    v: float
    v_equation: float
    s_equation: float


def euler_lagrange_profile(
    model: EosModel,
    gamma: Path,
    *,
    points_per_interval: int = 5,
    mode: DerivativeMode = DerivativeMode.ANALYTIC,
) -> list[EulerLagrangeSample]:
    """Euler-Lagrange residuals at interior points of every monotone piece of gamma."""
    out: list[EulerLagrangeSample] = []
    fractions = np.linspace(0.0, 1.0, int(points_per_interval) + 2)[1:-1]
    for a, b in split_monotone(gamma):
        for f in fractions:
            t = float(a + f * (b - a))
            r = euler_lagrange_residuals(model, gamma, t, mode=mode)
            s, v = gamma.point(t)
            out.append(EulerLagrangeSample(t=t, s=s, v=v, v_equation=r.v_equation, s_equation=r.s_equation))
    return out


def equilibrium_surface_residual(
    model: EosModel,
    pt: StatePoint | tuple[float, float],
    t_claim: float,
    p_claim: float,
    *,
    mode: DerivativeMode = DerivativeMode.ANALYTIC,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> tuple[float, float]:
    """(T_claim - dU/dS, P_claim + dU/dV): zero iff (S, V, T, P) lies on the equilibrium surface."""
    s, v = _point(model, pt, tolerances)
    u_s, u_v = gradient(model, "U", s, v, mode=mode)
    return float(t_claim) - u_s, float(p_claim) + u_v


@dataclass(frozen=True)
class SurfaceConditionReport:
    closure: float
    printed_condition: float
    printed_form_suspect: bool


def surface_condition_report(
    model: EosModel,
    pt: StatePoint | tuple[float, float],
    *,
    mode: DerivativeMode = DerivativeMode.ANALYTIC,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> SurfaceConditionReport:
    """
    Compares (dT/dV)_S = -(dP/dS)_V with the variant (dT/dV)_S = -(dP/dV)_S.

    Only the first is a Maxwell relation; the variant is reported as suspect wherever it
    fails while the relation holds.
    """
    s, v = _point(model, pt, tolerances)
    _, t_v = gradient(model, "T", s, v, mode=mode)
    p_s, p_v = gradient(model, "P", s, v, mode=mode)
    closure = t_v + p_s
    printed = t_v + p_v
    scale = max(1.0, abs(t_v), abs(p_s), abs(p_v))
    bound = tolerances.deriv_rel * scale
    return SurfaceConditionReport(
        closure=closure,
        printed_condition=printed,
        printed_form_suspect=abs(closure) <= bound < abs(printed),
    )
