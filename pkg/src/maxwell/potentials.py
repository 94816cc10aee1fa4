from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from calculus.derivatives import DerivativeMode, partial, quantity_value
from calculus.forms import OneForm
from core.charts import Chart, StatePoint
from core.errors import DomainError
from core.tolerances import DEFAULT_TOLERANCES, Tolerances
from eos.inversion import invert_to_chart, to_chart
from eos.models import EosModel
from maxwell.cases import CASES, MaxwellCase


class PotentialKind(str, Enum):
    U = "U"
    F = "F"
    H = "H"
    G = "G"


@dataclass(frozen=True)
class _NaturalForm:
    chart: Chart
    # d(potential) = sign1 * q1 d(x1) + sign2 * q2 d(x2) on the natural chart (x1, x2).
    q1: str
    sign1: float
    q2: str
    sign2: float
    case: int
    # Relates the closure of the natural form to lhs - rhs of its Maxwell case.
    orientation: float


NATURAL_FORMS: dict[PotentialKind, _NaturalForm] = {
    PotentialKind.U: _NaturalForm(Chart.SV, "T", 1.0, "P", -1.0, case=1, orientation=1.0),
    PotentialKind.F: _NaturalForm(Chart.TV, "S", -1.0, "P", -1.0, case=2, orientation=-1.0),
    PotentialKind.H: _NaturalForm(Chart.SP, "T", 1.0, "V", 1.0, case=4, orientation=1.0),
    PotentialKind.G: _NaturalForm(Chart.TP, "S", -1.0, "V", 1.0, case=3, orientation=1.0),
}


@dataclass(frozen=True)
class Potential:
    """
    A Legendre transform of U(S, V) read on its natural chart.

    F = U - TS on (T, V), H = U + PV on (S, P), G = U - TS + PV on (T, P); points may be
    given on the natural chart (inverted to (S, V) first) or directly as (S, V) points.
    """

    kind: PotentialKind
    model: EosModel
    tolerances: Tolerances = DEFAULT_TOLERANCES
    mode: DerivativeMode = DerivativeMode.ANALYTIC

    @property
    def natural(self) -> _NaturalForm:
        return NATURAL_FORMS[self.kind]

    @property
    def chart(self) -> Chart:
        return self.natural.chart

    @property
    def case(self) -> MaxwellCase:
        return CASES[self.natural.case]

    def sv_point(self, pt: StatePoint | tuple[float, float]) -> tuple[float, float]:
        if isinstance(pt, StatePoint):
            if pt.chart is Chart.SV:
                return pt.c1, pt.c2
            if pt.chart is not self.chart:
                raise DomainError(f"{self.kind.value} lives on chart {self.chart.value}, got a {pt.chart.value} point")
            sv = invert_to_chart(self.model, self.chart, pt, tolerances=self.tolerances)
            return sv.c1, sv.c2
        # Bare pairs are natural-chart coordinates.
        return self.sv_point(StatePoint(self.chart, float(pt[0]), float(pt[1])))

    def value(self, pt: StatePoint | tuple[float, float]) -> float:
        s, v = self.sv_point(pt)
        return quantity_value(self.model, self.kind.value, s, v)

    def first_derivatives(self, pt: StatePoint | tuple[float, float]) -> tuple[float, float]:
        """(d Phi/d x1)_x2 and (d Phi/d x2)_x1 on the natural chart, from the derivative engine."""
        s, v = self.sv_point(pt)
        x1, x2 = self.chart.axis_labels
        d1 = partial(self.model, self.kind.value, x1, x2, (s, v), mode=self.mode, tolerances=self.tolerances)
        d2 = partial(self.model, self.kind.value, x2, x1, (s, v), mode=self.mode, tolerances=self.tolerances)
        return d1, d2

    def natural_components(self, pt: StatePoint | tuple[float, float]) -> tuple[float, float]:
        """The expected first derivatives, e.g. (-S, -P) for F."""
        s, v = self.sv_point(pt)
        n = self.natural
        return (
            n.sign1 * quantity_value(self.model, n.q1, s, v),
            n.sign2 * quantity_value(self.model, n.q2, s, v),
        )

    def legendre_gap(self, pt: StatePoint | tuple[float, float]) -> float:
        """Largest gap between the first derivatives of the potential and its natural components."""
        d1, d2 = self.first_derivatives(pt)
        n1, n2 = self.natural_components(pt)
        return max(abs(d1 - n1), abs(d2 - n2))

    def mixed_partials(self, pt: StatePoint | tuple[float, float]) -> tuple[float, float]:
        """
        d/dx2 (d Phi/d x1)_x2 and d/dx1 (d Phi/d x2)_x1 on the natural chart.

        The first derivatives come from the derivative engine; the outer derivative
        central-differences them in (S, V) and moves along the chart by a linear solve.
        """
        s, v = self.sv_point(pt)
        x1, x2 = self.chart.axis_labels
        kw = {"mode": self.mode, "tolerances": self.tolerances}

        def d1(a: float, b: float) -> float:
            return partial(self.model, self.kind.value, x1, x2, (float(a), float(b)), **kw)

        def d2(a: float, b: float) -> float:
            return partial(self.model, self.kind.value, x2, x1, (float(a), float(b)), **kw)

        fd = DerivativeMode.CENTRAL_DIFFERENCE
        d12 = partial(self.model, d1, x2, x1, (s, v), quantity_mode=fd, **kw)
        d21 = partial(self.model, d2, x1, x2, (s, v), quantity_mode=fd, **kw)
        return d12, d21

    def closure_residual(self, pt: StatePoint | tuple[float, float]) -> float:
        """sign1 (d q1/d x2)_x1 - sign2 (d q2/d x1)_x2: vanishes iff the natural form is closed."""
        s, v = self.sv_point(pt)
        n = self.natural
        x1, x2 = self.chart.axis_labels
        d_q1 = partial(self.model, n.q1, x2, x1, (s, v), mode=self.mode, tolerances=self.tolerances)
        d_q2 = partial(self.model, n.q2, x1, x2, (s, v), mode=self.mode, tolerances=self.tolerances)
        return n.sign1 * d_q1 - n.sign2 * d_q2

    def one_form(self) -> OneForm:
        """d(Phi) on the natural chart; components take natural-chart coordinates."""
        n = self.natural

        def comp(q: str, sign: float):
            def f(c1: float, c2: float) -> float:
                s, v = self.sv_point((c1, c2))
                return sign * quantity_value(self.model, q, s, v)

            return f

        return OneForm(
            chart=self.chart,
            comp1=comp(n.q1, n.sign1),
            comp2=comp(n.q2, n.sign2),
            label=f"d{self.kind.value}",
            dual_safe=False,
            exterior=lambda c1, c2: -self.closure_residual((c1, c2)),
        )


def legendre(
    model: EosModel,
    kind: PotentialKind | str,
    *,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    mode: DerivativeMode = DerivativeMode.ANALYTIC,
) -> Potential:
    """
    Build potential `kind` from the model's U(S, V).

    The inversion to the natural chart is probed once at the centre of the model's box
    so an unusable chart fails here rather than at first use.
    """
    pot = Potential(kind=PotentialKind(kind), model=model, tolerances=tolerances, mode=mode)
    if pot.chart is not Chart.SV:
        box = model.domain
        centre = StatePoint.sv(sum(box.s_range) / 2.0, sum(box.v_range) / 2.0)
        invert_to_chart(model, pot.chart, to_chart(model, centre, pot.chart), tolerances=tolerances)
    return pot


def maxwell_from_potential(
    model: EosModel,
    kind: PotentialKind | str,
    pt: StatePoint | tuple[float, float],
    *,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    mode: DerivativeMode = DerivativeMode.ANALYTIC,
) -> float:
    """
    Maxwell residual of the case the potential yields (U -> 1, F -> 2, G -> 3, H -> 4),
    read off the potential itself: the difference of its two mixed second partials,
    signed as lhs - rhs of the case.

    This equals the case residual only where the first derivatives of the potential are
    the natural components; `Potential.legendre_gap` checks that separately.
    Bare pairs are (S, V) coordinates here, so every potential can be swept on one grid.
    """
    pot = Potential(kind=PotentialKind(kind), model=model, tolerances=tolerances, mode=mode)
    sv = pt if isinstance(pt, StatePoint) else StatePoint.sv(float(pt[0]), float(pt[1]))
    d12, d21 = pot.mixed_partials(sv)
    return pot.natural.orientation * (d12 - d21)
