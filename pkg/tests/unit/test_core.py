from __future__ import annotations

import math

import pytest

from core.charts import Chart, StatePoint
from core.errors import ConfigError, DomainError, ThermoError
from core.tolerances import DEFAULT_TOLERANCES, Tolerances
from core.units import reduced_units_doc


def test_chart_axes_keep_their_order():
    assert Chart.SV.axis_labels == ("S", "V")
    assert Chart.from_axes("T", "P") is Chart.TP
    with pytest.raises(DomainError):
        Chart.from_axes("V", "S")


def test_state_point_rejects_non_positive_volume_and_pressure():
    with pytest.raises(DomainError):
        StatePoint.sv(0.0, 0.0)
    with pytest.raises(DomainError):
        StatePoint(Chart.TP, 1.0, -2.0)
    with pytest.raises(DomainError):
        StatePoint.sv(math.nan, 1.0)


def test_state_point_allows_negative_entropy():
    pt = StatePoint.sv(-3.0, 1.5)
    assert pt.coordinate("S") == -3.0
    assert pt.as_dict() == {"S": -3.0, "V": 1.5}
    with pytest.raises(KeyError):
        pt.coordinate("T")


def test_tolerances_validate_and_override():
    assert DEFAULT_TOLERANCES.quad_abs == 1e-10
    tighter = DEFAULT_TOLERANCES.with_overrides(deriv_rel=1e-10)
    assert tighter.deriv_rel == 1e-10
    assert tighter.fd_rel == DEFAULT_TOLERANCES.fd_rel
    with pytest.raises(ConfigError):
        Tolerances(quad_abs=-1.0)
    with pytest.raises(ConfigError):
        Tolerances(max_newton_iter=0)


def test_error_hierarchy():
    assert issubclass(DomainError, ThermoError)
    assert issubclass(DomainError, ValueError)
    assert issubclass(ConfigError, ValueError)


def test_reduced_units_doc_mentions_convention():
    assert "NkB=1" in reduced_units_doc()
