from __future__ import annotations

import math

import numpy as np
import pytest

from core.charts import Chart, StatePoint
from core.errors import DomainError, NoConvergenceError, NonBracketedRootError
from eos.inversion import (
    entropy_at_temperature,
    invert_to_chart,
    newton_bisect,
    to_chart,
    to_sv,
    volume_at_pressure,
    volume_at_temperature,
)
from eos.models import DomainBox, corrupt_pressure, evaluate, ideal_gas, van_der_waals


def test_ideal_gas_reference_point(gas):
    values = evaluate(gas, StatePoint.sv(0.0, 1.0))
    assert values.u == pytest.approx(1.0)
    assert values.t == pytest.approx(2.0 / 3.0)
    assert values.p == pytest.approx(2.0 / 3.0)


def test_ideal_gas_law_holds_on_random_points(gas, unit_box):
    rng = np.random.default_rng(0)
    for s, v in unit_box.sample(rng, 50):
        values = evaluate(gas, StatePoint.sv(s, v))
        assert values.p * v == pytest.approx(values.t, rel=1e-14)
        assert values.t == pytest.approx(2.0 * values.u / 3.0, rel=1e-14)


def test_gradients_match_central_differences(gas, vdw):
    h = 1e-6
    for model in (gas, vdw):
        s, v = 0.4, 1.3
        for fn, grad in (
            (model.energy, model.energy_gradient),
            (model.temperature, model.temperature_gradient),
            (model.pressure, model.pressure_gradient),
        ):
            d_s = (fn(s + h, v) - fn(s - h, v)) / (2 * h)
            d_v = (fn(s, v + h) - fn(s, v - h)) / (2 * h)
            g_s, g_v = grad(s, v)
            assert g_s == pytest.approx(d_s, rel=1e-7)
            assert g_v == pytest.approx(d_v, rel=1e-7)


def test_van_der_waals_pressure(vdw):
    s, v = 0.2, 1.4
    t = (2.0 / 3.0) * (v - 0.05) ** (-2.0 / 3.0) * math.exp(2.0 * s / 3.0)
    assert vdw.temperature(s, v) == pytest.approx(t)
    assert vdw.pressure(s, v) == pytest.approx(t / (v - 0.05) - 0.1 / v**2)
    assert vdw.energy(s, v) == pytest.approx(1.5 * t - 0.1 / v)


def test_van_der_waals_rejects_box_below_covolume():
    with pytest.raises(DomainError):
        van_der_waals(0.1, 0.5, domain=DomainBox(s_range=(0.0, 1.0), v_range=(0.4, 2.0)))
    with pytest.raises(DomainError):
        van_der_waals(-0.1, 0.05)


def test_evaluate_outside_domain_raises():
    model = ideal_gas(domain=DomainBox(s_range=(0.0, 1.0), v_range=(1.0, 2.0)))
    with pytest.raises(DomainError):
        evaluate(model, StatePoint.sv(0.5, 3.0))
    with pytest.raises(DomainError):
        evaluate(model, StatePoint(Chart.TV, 1.0, 1.5))


def test_corrupted_model_shifts_pressure_only(gas):
    bad = corrupt_pressure(gas)
    assert bad.energy(0.3, 1.2) == gas.energy(0.3, 1.2)
    assert bad.temperature(0.3, 1.2) == gas.temperature(0.3, 1.2)
    assert bad.pressure(0.3, 1.2) == pytest.approx(gas.pressure(0.3, 1.2) + 0.3)
    assert bad.pressure_gradient(0.3, 1.2)[0] == pytest.approx(gas.pressure_gradient(0.3, 1.2)[0] + 1.0)
    assert "corrupted" in bad.describe()["name"]


def test_newton_bisect_finds_root_and_reports_failures():
    root = newton_bisect(lambda x: (x * x - 2.0, 2.0 * x), 0.0, 2.0, tol=1e-14, max_iter=64)
    assert root == pytest.approx(math.sqrt(2.0), abs=1e-12)
    with pytest.raises(NonBracketedRootError):
        newton_bisect(lambda x: (x * x + 1.0, 2.0 * x), -1.0, 2.0, tol=1e-14, max_iter=64)
    with pytest.raises(NoConvergenceError) as exc:
        newton_bisect(lambda x: (x * x - 2.0, 2.0 * x), 0.0, 2.0, tol=1e-300, max_iter=1)
    assert exc.value.iterations == 1


def test_level_solves_on_ideal_gas(gas):
    assert volume_at_temperature(gas, 0.0, 2.0 / 3.0) == pytest.approx(1.0, abs=1e-12)
    assert entropy_at_temperature(gas, 1.0, 2.0 / 3.0) == pytest.approx(0.0, abs=1e-12)
    # Isotherm V = e^S (3T/2)^(-3/2).
    assert volume_at_temperature(gas, 0.5, 0.4) == pytest.approx(math.exp(0.5) * 0.6 ** -1.5, rel=1e-12)
    p = float(gas.pressure(0.2, 1.7))
    assert volume_at_pressure(gas, 0.2, p) == pytest.approx(1.7, rel=1e-12)


@pytest.mark.parametrize("chart", [Chart.TV, Chart.SP, Chart.TP])
@pytest.mark.parametrize("model_name", ["gas", "vdw"])
def test_chart_round_trip(chart, model_name, request):
    model = request.getfixturevalue(model_name)
    pt = StatePoint.sv(0.5, 1.5)
    there = to_chart(model, pt, chart)
    back = invert_to_chart(model, chart, there)
    assert back.c1 == pytest.approx(0.5, abs=1e-10)
    assert back.c2 == pytest.approx(1.5, rel=1e-10)
    assert to_sv(model, there).coords == pytest.approx(back.coords)


def test_inversion_outside_box_is_not_bracketed(gas):
    with pytest.raises(NonBracketedRootError):
        invert_to_chart(gas, Chart.TV, (1.0, 50.0))
    with pytest.raises(NonBracketedRootError):
        # Above any pressure the box reaches at S = 0.
        invert_to_chart(gas, Chart.SP, (0.0, 1e6))


def test_van_der_waals_without_interactions_is_the_ideal_gas(gas, unit_box):
    plain = van_der_waals(0.0, 0.0)
    for s, v in unit_box.sample(np.random.default_rng(5), 50):
        assert plain.energy(s, v) == pytest.approx(gas.energy(s, v), rel=1e-12)
        assert plain.temperature(s, v) == pytest.approx(gas.temperature(s, v), rel=1e-12)
        assert plain.pressure(s, v) == pytest.approx(gas.pressure(s, v), rel=1e-12)


def test_van_der_waals_requires_positive_pressure_on_its_box():
    # At S = -1, V = 0.3 the attraction term wins: P < 0 inside the default box.
    with pytest.raises(DomainError, match="entropy floor above 0.75"):
        van_der_waals(1.0, 0.05)
    with pytest.raises(DomainError):
        van_der_waals(1.0, 0.05, domain=DomainBox(s_range=(0.5, 3.0), v_range=(0.15, 10.0)))
    strong = van_der_waals(1.0, 0.05, domain=DomainBox(s_range=(0.8, 3.0), v_range=(0.15, 10.0)))
    assert strong.pressure(0.8, 0.3) > 0.0


@pytest.mark.parametrize("model_name", ["gas", "vdw"])
def test_temperature_and_pressure_positive_over_default_box(model_name, request):
    model = request.getfixturevalue(model_name)
    for s, v in model.domain.sample(np.random.default_rng(9), 200) + model.domain.grid(9, 9):
        values = evaluate(model, StatePoint.sv(s, v))
        assert values.t > 0.0
        assert values.p > 0.0


def test_isochore_inversion_gives_log_two(gas):
    # S = (3/2) ln(3T/2) + ln V.
    pt = invert_to_chart(gas, Chart.TV, (2.0 / 3.0, 2.0))
    assert pt.c1 == pytest.approx(math.log(2.0), abs=1e-12)
    assert pt.c2 == 2.0


@pytest.mark.parametrize("chart", [Chart.TV, Chart.SP, Chart.TP])
@pytest.mark.parametrize("model_name", ["gas", "vdw"])
def test_chart_round_trip_on_random_points(chart, model_name, unit_box, request):
    model = request.getfixturevalue(model_name)
    for s, v in unit_box.sample(np.random.default_rng(21), 100):
        back = invert_to_chart(model, chart, to_chart(model, StatePoint.sv(s, v), chart))
        assert back.c1 == pytest.approx(s, abs=1e-10)
        assert back.c2 == pytest.approx(v, rel=1e-10)
