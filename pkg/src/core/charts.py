from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from core.errors import DomainError


class Chart(str, Enum):
    """
    The four coordinate charts of the (S, V, T, P) equilibrium surface.

    Axis order is part of the chart: SV means (S, V), never (V, S).
    """

    SV = "SV"
    TV = "TV"
    TP = "TP"
    SP = "SP"

    @property
    def axis_labels(self) -> tuple[str, str]:
        return (self.value[0], self.value[1])

    @classmethod
    def from_axes(cls, first: str, second: str) -> "Chart":
        key = f"{first}{second}"
        try:
            return cls(key)
        except ValueError:
            raise DomainError(f"No chart with axes ({first}, {second})") from None


# Coordinates that must stay strictly positive wherever a chart carries them.
_POSITIVE_AXES = frozenset({"V", "T", "P"})


@dataclass(frozen=True)
class StatePoint:
    chart: Chart
    c1: float
    c2: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.c1) and math.isfinite(self.c2)):
            raise DomainError(f"Non-finite coordinates on chart {self.chart.value}: ({self.c1}, {self.c2})")
        for label, value in zip(self.chart.axis_labels, (self.c1, self.c2)):
            if label in _POSITIVE_AXES and value <= 0.0:
                raise DomainError(f"{label} must be > 0, got {value}")

    @classmethod
    def sv(cls, s: float, v: float) -> "StatePoint":
        return cls(Chart.SV, float(s), float(v))

    @property
    def coords(self) -> tuple[float, float]:
        return (self.c1, self.c2)

    def coordinate(self, label: str) -> float:
        first, second = self.chart.axis_labels
        if label == first:
            return self.c1
        if label == second:
            return self.c2
        raise KeyError(f"Chart {self.chart.value} has no coordinate {label}")

    def as_dict(self) -> dict[str, float]:
        first, second = self.chart.axis_labels
        return {first: self.c1, second: self.c2}
