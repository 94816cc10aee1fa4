from __future__ import annotations

from dataclasses import dataclass

from calculus.dual import Scalar
from calculus.forms import OneForm, differential_form
from core.charts import Chart, StatePoint
from core.errors import DomainError
from eos.models import EosModel


def _sv(pt: StatePoint | tuple[Scalar, Scalar]) -> tuple[Scalar, Scalar]:
    if isinstance(pt, StatePoint):
        if pt.chart is not Chart.SV:
            raise DomainError(f"Lagrangian components live on the SV chart, got {pt.chart.value}")
        return pt.c1, pt.c2
    return pt[0], pt[1]


@dataclass(frozen=True)
class LagrangianOneForm:
    """
    L = L_V dV + L_S dS with L_V = T (dS/dV) - P and L_S = T - P (dV/dS).

    Along a monotone piece of path each term alone integrates to T dS - P dV, so the
    plain sum counts the energy change twice. action() therefore integrates one
    component at a time; component_sum_form() is the doubled chart form for Stokes checks.
    """

    model: EosModel

    def component_v(self, pt: StatePoint | tuple[Scalar, Scalar], slope_s_per_v: Scalar) -> Scalar:
        s, v = _sv(pt)
        return self.model.temperature(s, v) * slope_s_per_v - self.model.pressure(s, v)

    def component_s(self, pt: StatePoint | tuple[Scalar, Scalar], slope_v_per_s: Scalar) -> Scalar:
        s, v = _sv(pt)
        return self.model.temperature(s, v) - self.model.pressure(s, v) * slope_v_per_s

    # Both components are affine in the slope, so the momenta are differences at slope 1 and 0.

    def momentum_v(self, pt: StatePoint | tuple[Scalar, Scalar]) -> Scalar:
        """dL_V/d(dS/dV); equals T."""
        return self.component_v(pt, 1.0) - self.component_v(pt, 0.0)

    def momentum_s(self, pt: StatePoint | tuple[Scalar, Scalar]) -> Scalar:
        """dL_S/d(dV/dS); equals -P."""
        return self.component_s(pt, 1.0) - self.component_s(pt, 0.0)

    def as_chart_form(self) -> OneForm:
        """The chart 1-form (T, -P) whose line integral is the action."""
        return differential_form(self.model)

    def component_sum_form(self) -> OneForm:
        """L_V dV + L_S dS read as a chart form: two copies of (T, -P)."""
        return differential_form(self.model).scaled(2.0, label="L_V dV + L_S dS")
