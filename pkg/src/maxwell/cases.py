from __future__ import annotations

from dataclasses import dataclass

from calculus.derivatives import DerivativeMode, partial, wedge_ratio
from core.charts import Chart, StatePoint
from core.errors import DomainError
from core.tolerances import DEFAULT_TOLERANCES, Tolerances
from eos.inversion import to_sv
from eos.models import EosModel


@dataclass(frozen=True)
class Term:
    """sign * (d quantity / d wrt) at constant held."""

    sign: float
    quantity: str
    wrt: str
    held: str

    def render(self) -> str:
        prefix = "-" if self.sign < 0 else ""
        return f"{prefix}(d{self.quantity}/d{self.wrt})_{self.held}"


@dataclass(frozen=True)
class MaxwellCase:
    """
    One Maxwell relation lhs = rhs, obtained by dividing dT^dS = dP^dV by dX^dY.

    `axes` keeps the (X, Y) order of the division; `chart` is the coordinate chart with
    the same pair of axes.
    """

    index: int
    axes: tuple[str, str]
    lhs: Term
    rhs: Term

    @property
    def chart(self) -> Chart:
        try:
            return Chart.from_axes(*self.axes)
        except DomainError:
            return Chart.from_axes(self.axes[1], self.axes[0])

    @property
    def statement(self) -> str:
        return f"{self.lhs.render()} = {self.rhs.render()}"


CASES: dict[int, MaxwellCase] = {
    1: MaxwellCase(1, ("V", "S"), Term(1.0, "T", "V", "S"), Term(-1.0, "P", "S", "V")),
    2: MaxwellCase(2, ("T", "V"), Term(1.0, "S", "V", "T"), Term(1.0, "P", "T", "V")),
    3: MaxwellCase(3, ("P", "T"), Term(-1.0, "S", "P", "T"), Term(1.0, "V", "T", "P")),
    4: MaxwellCase(4, ("P", "S"), Term(1.0, "T", "P", "S"), Term(1.0, "V", "S", "P")),
}


def get_case(case: int | MaxwellCase) -> MaxwellCase:
    if isinstance(case, MaxwellCase):
        return case
    try:
        return CASES[int(case)]
    except KeyError:
        raise DomainError(f"Maxwell case must be 1..4, got {case}") from None


def _sv(model: EosModel, pt: StatePoint | tuple[float, float], tolerances: Tolerances) -> tuple[float, float]:
    if isinstance(pt, StatePoint):
        sv = to_sv(model, pt, tolerances=tolerances)
        return sv.c1, sv.c2
    return float(pt[0]), float(pt[1])


def maxwell_residual_jacobian(
    model: EosModel,
    case: int | MaxwellCase,
    pt: StatePoint | tuple[float, float],
    *,
    mode: DerivativeMode = DerivativeMode.ANALYTIC,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """d(T,S)/d(X,Y) - d(P,V)/d(X,Y), each a quotient of (S, V) Jacobian determinants."""
    c = get_case(case)
    s, v = _sv(model, pt, tolerances)
    heat = wedge_ratio(model, ("T", "S"), c.axes, (s, v), mode=mode, tolerances=tolerances)
    work = wedge_ratio(model, ("P", "V"), c.axes, (s, v), mode=mode, tolerances=tolerances)
    return heat - work


def term_value(
    model: EosModel,
    term: Term,
    pt: StatePoint | tuple[float, float],
    *,
    mode: DerivativeMode = DerivativeMode.ANALYTIC,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    s, v = _sv(model, pt, tolerances)
    return term.sign * partial(model, term.quantity, term.wrt, term.held, (s, v), mode=mode, tolerances=tolerances)


def maxwell_residual_partials(
    model: EosModel,
    case: int | MaxwellCase,
    pt: StatePoint | tuple[float, float],
    *,
    mode: DerivativeMode = DerivativeMode.ANALYTIC,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """lhs - rhs of the case statement from held-constant partial derivatives."""
    c = get_case(case)
    s, v = _sv(model, pt, tolerances)
    lhs = term_value(model, c.lhs, (s, v), mode=mode, tolerances=tolerances)
    rhs = term_value(model, c.rhs, (s, v), mode=mode, tolerances=tolerances)
    return lhs - rhs
