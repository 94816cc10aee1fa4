from __future__ import annotations

from dataclasses import dataclass

from calculus.forms import OneForm
from core.errors import ActionCrossCheckError
from core.tolerances import DEFAULT_TOLERANCES, Tolerances
from eos.models import EosModel
from lagrangian.oneform import LagrangianOneForm
from paths.curves import Path, PathFamily, generate_paths
from paths.integrals import line_integral, quad_unit_interval
from utils.logging import get_logger


logger = get_logger(component="lagrangian_action")


def _component_integrand(lag: LagrangianOneForm, gamma: Path):
    # Locally parametrize by whichever coordinate moves faster: L_V dV where |V'| >= |S'|, L_S dS otherwise.
    def integrand(t: float) -> float:
        s, v = gamma.s_of_t(t), gamma.v_of_t(t)
        ds, dv = gamma.ds_dt(t), gamma.dv_dt(t)
        if ds == 0.0 and dv == 0.0:
            return 0.0
        if abs(dv) >= abs(ds):
            return float(lag.component_v((s, v), ds / dv)) * dv
        return float(lag.component_s((s, v), dv / ds)) * ds

    return integrand


def action(
    model: EosModel,
    gamma: Path,
    *,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    cross_check: bool = True,
) -> float:
    """
    U[gamma] = int_gamma T dS - P dV, evaluated through the Lagrangian components.

    With `cross_check`, the value is compared against the line integral of the dU form
    and an ActionCrossCheckError is raised when they differ by more than 10 * quad_abs.
    """
    gamma.check_in_domain(model.domain)
    lag = LagrangianOneForm(model)
    value = quad_unit_interval(
        _component_integrand(lag, gamma),
        breakpoints=gamma.breakpoints,
        tolerances=tolerances,
        label=f"action {gamma.label}",
    )
    if cross_check:
        reference = line_integral(lag.as_chart_form(), gamma, tolerances=tolerances)
        if abs(value - reference) > 10.0 * tolerances.quad_abs:
            raise ActionCrossCheckError(
                f"action on {gamma.label}: components give {value:.15g}, chart form gives {reference:.15g}"
            )
    return value


@dataclass(frozen=True)
class VariationalResult:
    action_before: float
    action_after: float
    delta: float
    perturbation_amplitude: float
    path_label: str = ""

    @classmethod
    def between(cls, before: float, after: float, *, amplitude: float, label: str = "") -> "VariationalResult":
        return cls(action_before=before, action_after=after, delta=after - before, perturbation_amplitude=amplitude, path_label=label)


def variational_check(
    model: EosModel,
    gamma: Path,
    family: PathFamily,
    *,
    form: OneForm | None = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> list[VariationalResult]:
    """
    Action differences between `gamma` and each fixed-endpoint deformation from `family`.

    Without `form` the functional is the action (exact, so every delta vanishes to
    quadrature precision). With a form, its line integral is used instead; the work form
    -P dV gives deltas of the order of the perturbation.
    """
    perturbed = generate_paths(family, (gamma.start, gamma.end), domain=model.domain, base=gamma)

    def functional(path: Path) -> float:
        if form is None:
            return action(model, path, tolerances=tolerances)
        return line_integral(form, path, tolerances=tolerances, domain=model.domain)

    before = functional(gamma)
    results = [
        VariationalResult.between(before, functional(p), amplitude=float(family.amplitude), label=p.label)
        for p in perturbed
    ]
    logger.debug(
        "variational_check_done",
        functional=form.label if form is not None else "action",
        paths=len(results),
        max_abs_delta=max((abs(r.delta) for r in results), default=0.0),
    )
    return results
