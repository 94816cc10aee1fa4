from __future__ import annotations

import math

import numpy as np
import pytest

from calculus.derivatives import DerivativeMode, gradient, jacobian, partial, quantity_value, wedge_ratio
from calculus.dual import Dual, dual_part, exp, log, real_part
from calculus.forms import (
    differential_form,
    exterior_derivative,
    heat_form,
    polynomial_form,
    random_polynomial_form,
    work_form,
    zero_two_form,
)
from core.charts import Chart
from core.errors import SingularChartError


def test_dual_arithmetic_carries_first_derivative():
    x = Dual(2.0, 1.0)
    y = x * x + 3.0 * x - 1.0 / x
    assert real_part(y) == pytest.approx(4.0 + 6.0 - 0.5)
    assert dual_part(y) == pytest.approx(4.0 + 3.0 + 0.25)
    z = exp(x / 2.0) * log(x) - x ** 1.5
    assert real_part(z) == pytest.approx(math.e * math.log(2.0) - 2.0**1.5)
    assert dual_part(z) == pytest.approx(0.5 * math.e * math.log(2.0) + math.e / 2.0 - 1.5 * math.sqrt(2.0))
    assert dual_part(3.0) == 0.0
    with pytest.raises(ZeroDivisionError):
        _ = 1.0 / Dual(0.0, 1.0)


@pytest.mark.parametrize("quantity", ["U", "T", "P", "F", "H", "G", "S", "V"])
@pytest.mark.parametrize("model_name", ["gas", "vdw"])
def test_gradient_modes_agree(quantity, model_name, request):
    model = request.getfixturevalue(model_name)
    s, v = 0.3, 1.4
    exact = gradient(model, quantity, s, v, mode=DerivativeMode.ANALYTIC)
    dual = gradient(model, quantity, s, v, mode=DerivativeMode.DUAL_NUMBER)
    fd = gradient(model, quantity, s, v, mode=DerivativeMode.CENTRAL_DIFFERENCE)
    for a, b, c in zip(exact, dual, fd):
        assert b == pytest.approx(a, rel=1e-12, abs=1e-14)
        assert c == pytest.approx(a, rel=1e-6, abs=1e-9)


def test_gradient_of_plain_function():
    g = gradient(None, lambda s, v: s * s * v, 2.0, 3.0, mode=DerivativeMode.DUAL_NUMBER)
    assert g == pytest.approx((12.0, 4.0))
    assert quantity_value(None, "S", 2.0, 3.0) == 2.0
    with pytest.raises(KeyError):
        gradient(None, "Q", 0.0, 1.0)


def test_partial_and_wedge_ratio_agree_with_direct_partials(gas):
    s, v = 0.5, 1.5
    t_s, t_v = gas.temperature_gradient(s, v)
    p_s, _ = gas.pressure_gradient(s, v)
    assert partial(gas, "T", "V", "S", (s, v)) == pytest.approx(t_v, rel=1e-14)
    assert partial(gas, "P", "S", "V", (s, v)) == pytest.approx(p_s, rel=1e-14)
    assert partial(gas, "S", "T", "V", (s, v)) == pytest.approx(1.0 / t_s, rel=1e-13)
    assert wedge_ratio(gas, ("T", "S"), ("V", "S"), (s, v)) == pytest.approx(t_v, rel=1e-14)
    assert jacobian(gas, ("S", "V"), s, v) == 1.0


def test_parallel_gradients_are_a_singular_chart(gas):
    # For the ideal gas U = 3T/2, so (U, T) cannot serve as coordinates.
    with pytest.raises(SingularChartError):
        partial(gas, "P", "U", "T", (0.2, 1.2))
    with pytest.raises(SingularChartError):
        wedge_ratio(gas, ("P", "V"), ("U", "T"), (0.2, 1.2))


def test_dU_form_is_closed_and_heat_form_is_not(gas):
    for mode in DerivativeMode:
        d_du = exterior_derivative(differential_form(gas), mode=mode)
        assert d_du.at((0.4, 1.3)) == pytest.approx(0.0, abs=1e-6 if mode is DerivativeMode.CENTRAL_DIFFERENCE else 1e-14)
    exact = exterior_derivative(heat_form(gas)).at((0.4, 1.3))
    dual = exterior_derivative(heat_form(gas), mode=DerivativeMode.DUAL_NUMBER).at((0.4, 1.3))
    assert exact > 0.0
    assert dual == pytest.approx(exact, rel=1e-12)


def test_heat_plus_work_is_dU(gas):
    total = heat_form(gas) + work_form(gas)
    assert total.at((0.1, 1.9)) == pytest.approx(differential_form(gas).at((0.1, 1.9)))
    assert exterior_derivative(total).at((0.1, 1.9)) == pytest.approx(0.0, abs=1e-14)
    doubled = differential_form(gas).scaled(2.0)
    assert doubled.at((0.0, 1.0)) == pytest.approx((4.0 / 3.0, -4.0 / 3.0))
    assert doubled.pair((1.0, 1.0), (0.0, 1.0)) == pytest.approx(0.0)


def test_polynomial_form_exterior_derivative():
    # -y dx + x dy has d = 2 dx^dy.
    rot = polynomial_form(np.array([[0.0, -1.0], [0.0, 0.0]]), np.array([[0.0, 0.0], [1.0, 0.0]]))
    assert rot.at((2.0, 3.0)) == pytest.approx((-3.0, 2.0))
    assert exterior_derivative(rot).at((0.7, 1.1)) == pytest.approx(2.0)
    assert exterior_derivative(rot).swapped_orientation().at((0.7, 1.1)) == pytest.approx(-2.0)


def test_random_polynomial_form_exact_vs_numeric_exterior():
    rng = np.random.default_rng(4)
    form = random_polynomial_form(rng, degree=3)
    exact = exterior_derivative(form)
    numeric = exterior_derivative(form, mode=DerivativeMode.CENTRAL_DIFFERENCE)
    for s, v in [(0.1, 1.2), (0.5, 1.5), (0.9, 1.9)]:
        assert numeric.at((s, v)) == pytest.approx(exact.at((s, v)), rel=1e-6, abs=1e-7)


def test_zero_two_form():
    w = zero_two_form(Chart.TP)
    assert w.chart is Chart.TP
    assert w.at((1.0, 1.0)) == 0.0


def test_literal_partials_of_the_ideal_gas(gas):
    # T = (2/3) V**(-2/3) exp(2S/3) and, on an isotherm, S = ln V + const.
    assert partial(gas, "T", "V", "S", (0.0, 1.0)) == pytest.approx(-4.0 / 9.0, rel=1e-12)
    assert partial(gas, "S", "V", "T", (0.3, 2.0)) == pytest.approx(0.5, rel=1e-12)
    assert wedge_ratio(gas, ("T", "S"), ("V", "S"), (0.0, 1.0)) == pytest.approx(-4.0 / 9.0, rel=1e-12)
    assert wedge_ratio(gas, ("P", "V"), ("V", "S"), (0.0, 1.0)) == pytest.approx(-4.0 / 9.0, rel=1e-12)


@pytest.mark.parametrize("pt", [(0.0, 1.0), (0.7, 0.4), (-1.2, 3.5)])
def test_wedge_ratio_is_antisymmetric(gas, pt):
    assert wedge_ratio(gas, ("T", "S"), ("T", "S"), pt) == pytest.approx(1.0, rel=1e-14)
    assert wedge_ratio(gas, ("T", "S"), ("S", "T"), pt) == pytest.approx(-1.0, rel=1e-14)
    assert wedge_ratio(gas, ("S", "T"), ("T", "S"), pt) == pytest.approx(-1.0, rel=1e-14)


def test_jacobian_chain_rule_at_random_points(gas):
    rng = np.random.default_rng(0)
    for s, v in zip(rng.uniform(-1.0, 1.0, 50), rng.uniform(0.5, 3.0, 50)):
        pt = (float(s), float(v))
        forward = wedge_ratio(gas, ("T", "S"), ("P", "V"), pt)
        back = wedge_ratio(gas, ("P", "V"), ("T", "S"), pt)
        assert forward * back == pytest.approx(1.0, rel=1e-12)
        via_sv = wedge_ratio(gas, ("T", "P"), ("S", "V"), pt) * wedge_ratio(gas, ("S", "V"), ("U", "V"), pt)
        assert via_sv == pytest.approx(wedge_ratio(gas, ("T", "P"), ("U", "V"), pt), rel=1e-12)
