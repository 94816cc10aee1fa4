from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from numpy.polynomial import polynomial as npoly

from calculus.derivatives import DerivativeMode, ScalarFunction, gradient
from core.charts import Chart, StatePoint
from eos.models import EosModel


Coefficient = Callable[[float, float], float]


def _coords(pt: StatePoint | tuple[float, float]) -> tuple[float, float]:
    if isinstance(pt, StatePoint):
        return pt.c1, pt.c2
    return float(pt[0]), float(pt[1])


@dataclass(frozen=True)
class OneForm:
    """
    comp1 d(c1) + comp2 d(c2) on a chart.

    Components are functions of the chart coordinates. `dual_safe` marks components that
    can be evaluated on dual numbers; `exterior` optionally carries the exact coefficient
    of the exterior derivative.
    """

    chart: Chart
    comp1: ScalarFunction
    comp2: ScalarFunction
    label: str = "form"
    dual_safe: bool = True
    exterior: Coefficient | None = field(default=None, compare=False)

    def at(self, pt: StatePoint | tuple[float, float]) -> tuple[float, float]:
        c1, c2 = _coords(pt)
        return float(self.comp1(c1, c2)), float(self.comp2(c1, c2))  # type: ignore[arg-type]

    def pair(self, t_dot: tuple[float, float], pt: StatePoint | tuple[float, float]) -> float:
        """Contraction with a tangent vector: comp1 * dc1/dt + comp2 * dc2/dt."""
        a, b = self.at(pt)
        return a * t_dot[0] + b * t_dot[1]

    def scaled(self, k: float, *, label: str | None = None) -> "OneForm":
        ext = self.exterior
        return OneForm(
            chart=self.chart,
            comp1=lambda x, y: k * self.comp1(x, y),
            comp2=lambda x, y: k * self.comp2(x, y),
            label=label or f"{k:g}*{self.label}",
            dual_safe=self.dual_safe,
            exterior=(lambda x, y: k * ext(x, y)) if ext is not None else None,
        )

    def __add__(self, other: "OneForm") -> "OneForm":
        if other.chart is not self.chart:
            raise ValueError(f"Cannot add forms on charts {self.chart.value} and {other.chart.value}")
        e1, e2 = self.exterior, other.exterior
        return OneForm(
            chart=self.chart,
            comp1=lambda x, y: self.comp1(x, y) + other.comp1(x, y),
            comp2=lambda x, y: self.comp2(x, y) + other.comp2(x, y),
            label=f"{self.label}+{other.label}",
            dual_safe=self.dual_safe and other.dual_safe,
            exterior=(lambda x, y: e1(x, y) + e2(x, y)) if e1 is not None and e2 is not None else None,
        )


@dataclass(frozen=True)
class TwoForm:
    """coeff d(c1) ^ d(c2), with d(c1) ^ d(c2) = -d(c2) ^ d(c1)."""

    chart: Chart
    coeff: Coefficient
    label: str = "2-form"

    def at(self, pt: StatePoint | tuple[float, float]) -> float:
        c1, c2 = _coords(pt)
        return float(self.coeff(c1, c2))

    def swapped_orientation(self) -> "TwoForm":
        """Coefficient with respect to d(c2) ^ d(c1)."""
        return TwoForm(chart=self.chart, coeff=lambda x, y: -self.coeff(x, y), label=f"swap({self.label})")


def exterior_derivative(f: OneForm, *, mode: DerivativeMode = DerivativeMode.ANALYTIC) -> TwoForm:
    """d(comp1 dc1 + comp2 dc2) = (d comp2/d c1 - d comp1/d c2) dc1 ^ dc2."""
    mode = DerivativeMode(mode)
    if mode is DerivativeMode.ANALYTIC and f.exterior is not None:
        return TwoForm(chart=f.chart, coeff=f.exterior, label=f"d({f.label})")

    # Analytic requests without an exact coefficient fall back to dual numbers when the components allow it.
    use_central = mode is DerivativeMode.CENTRAL_DIFFERENCE or not f.dual_safe
    engine = DerivativeMode.CENTRAL_DIFFERENCE if use_central else DerivativeMode.DUAL_NUMBER

    def coeff(c1: float, c2: float) -> float:
        d_comp2 = gradient(None, f.comp2, c1, c2, mode=engine)
        d_comp1 = gradient(None, f.comp1, c1, c2, mode=engine)
        return d_comp2[0] - d_comp1[1]

    return TwoForm(chart=f.chart, coeff=coeff, label=f"d({f.label})")


def zero_two_form(chart: Chart = Chart.SV) -> TwoForm:
    return TwoForm(chart=chart, coeff=lambda _x, _y: 0.0, label="0")


# --- forms built from an equation of state (all on the SV chart) ---


def differential_form(model: EosModel) -> OneForm:
    """dU = T dS - P dV."""

    def ext(s: float, v: float) -> float:
        _, t_v = model.temperature_gradient(s, v)
        p_s, _ = model.pressure_gradient(s, v)
        return -p_s - t_v

    return OneForm(
        chart=Chart.SV,
        comp1=lambda s, v: model.temperature(s, v),
        comp2=lambda s, v: -model.pressure(s, v),
        label="dU",
        exterior=ext,
    )


def heat_form(model: EosModel) -> OneForm:
    """T dS."""
    return OneForm(
        chart=Chart.SV,
        comp1=lambda s, v: model.temperature(s, v),
        comp2=lambda _s, _v: 0.0,
        label="TdS",
        exterior=lambda s, v: -model.temperature_gradient(s, v)[1],
    )


def work_form(model: EosModel) -> OneForm:
    """-P dV."""
    return OneForm(
        chart=Chart.SV,
        comp1=lambda _s, _v: 0.0,
        comp2=lambda s, v: -model.pressure(s, v),
        label="-PdV",
        exterior=lambda s, v: -model.pressure_gradient(s, v)[0],
    )


def polynomial_form(c1_coeffs: np.ndarray, c2_coeffs: np.ndarray, *, chart: Chart = Chart.SV, label: str = "poly") -> OneForm:
    """
    comp_i(x, y) = sum_jk C_i[j, k] x**j y**k, with the exterior derivative from
    numpy.polynomial so Green checks have an independent exact coefficient.
    """
    a = np.array(c1_coeffs, dtype=float)
    b = np.array(c2_coeffs, dtype=float)
    da_dy = npoly.polyder(a, axis=1)
    db_dx = npoly.polyder(b, axis=0)

    return OneForm(
        chart=chart,
        comp1=lambda x, y: float(npoly.polyval2d(x, y, a)),
        comp2=lambda x, y: float(npoly.polyval2d(x, y, b)),
        label=label,
        dual_safe=False,
        exterior=lambda x, y: float(npoly.polyval2d(x, y, db_dx)) - float(npoly.polyval2d(x, y, da_dy)),
    )


def random_polynomial_form(rng: np.random.Generator, *, degree: int = 3, scale: float = 1.0, label: str = "poly") -> OneForm:
    shape = (int(degree) + 1, int(degree) + 1)
    return polynomial_form(
        rng.uniform(-scale, scale, size=shape),
        rng.uniform(-scale, scale, size=shape),
        label=label,
    )
