from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, NamedTuple

import numpy as np

from calculus.dual import Scalar, exp
from core.charts import Chart, StatePoint
from core.errors import DomainError
from core.units import ENTROPY_OFFSET, REFERENCE_ENERGY, REFERENCE_VOLUME


Gradient = tuple[float, float]


@dataclass(frozen=True)
class DomainBox:
    s_range: tuple[float, float]
    v_range: tuple[float, float]

    def __post_init__(self) -> None:
        (s_lo, s_hi), (v_lo, v_hi) = self.s_range, self.v_range
        for x in (s_lo, s_hi, v_lo, v_hi):
            if not math.isfinite(x):
                raise DomainError(f"Domain box bounds must be finite: s={self.s_range} v={self.v_range}")
        if not s_lo < s_hi:
            raise DomainError(f"Empty entropy range {self.s_range}")
        if not v_lo < v_hi:
            raise DomainError(f"Empty volume range {self.v_range}")
        if v_lo <= 0.0:
            raise DomainError(f"Volume range must be strictly positive, got {self.v_range}")

    def contains(self, s: float, v: float, *, slack: float = 0.0) -> bool:
        (s_lo, s_hi), (v_lo, v_hi) = self.s_range, self.v_range
        return (s_lo - slack) <= s <= (s_hi + slack) and (v_lo - slack) <= v <= (v_hi + slack)

    def sample(self, rng: np.random.Generator, count: int) -> list[tuple[float, float]]:
        s = rng.uniform(self.s_range[0], self.s_range[1], size=int(count))
        v = rng.uniform(self.v_range[0], self.v_range[1], size=int(count))
        return [(float(a), float(b)) for a, b in zip(s, v)]

    def grid(self, ns: int, nv: int) -> list[tuple[float, float]]:
        s = np.linspace(self.s_range[0], self.s_range[1], int(ns))
        v = np.linspace(self.v_range[0], self.v_range[1], int(nv))
        return [(float(a), float(b)) for a in s for b in v]


class EosValues(NamedTuple):
    u: float
    t: float
    p: float


class EosModel(ABC):
    """
    A thermodynamic potential U(S, V) on a rectangular (S, V) domain.

    T = dU/dS and P = -dU/dV. energy/temperature/pressure accept floats or
    calculus.dual.Dual so the dual-number engine can differentiate them; the
    *_gradient methods return exact analytic partials (d/dS, d/dV).
    """

    name: str = "eos"

    def __init__(self, *, parameters: dict[str, float], domain: DomainBox, has_analytic_derivatives: bool = True) -> None:
        self.parameters = dict(parameters)
        self.domain = domain
        self.has_analytic_derivatives = bool(has_analytic_derivatives)

    def __repr__(self) -> str:
        params = ", ".join(f"{k}={v:g}" for k, v in sorted(self.parameters.items()))
        return f"{type(self).__name__}({params})"

    @abstractmethod
    def energy(self, s: Scalar, v: Scalar) -> Scalar: ...

    @abstractmethod
    def temperature(self, s: Scalar, v: Scalar) -> Scalar: ...

    @abstractmethod
    def pressure(self, s: Scalar, v: Scalar) -> Scalar: ...

    @abstractmethod
    def energy_gradient(self, s: float, v: float) -> Gradient: ...

    @abstractmethod
    def temperature_gradient(self, s: float, v: float) -> Gradient: ...

    @abstractmethod
    def pressure_gradient(self, s: float, v: float) -> Gradient: ...

    def contains(self, s: float, v: float, *, slack: float = 0.0) -> bool:
        return self.domain.contains(s, v, slack=slack)

    def check_point(self, s: float, v: float) -> None:
        if not self.contains(s, v):
            raise DomainError(
                f"({s:.6g}, {v:.6g}) outside {self.name} domain s={self.domain.s_range} v={self.domain.v_range}"
            )

    def describe(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "parameters": dict(self.parameters),
            "domain": {"s_range": list(self.domain.s_range), "v_range": list(self.domain.v_range)},
            "has_analytic_derivatives": self.has_analytic_derivatives,
        }


DEFAULT_IDEAL_GAS_DOMAIN = DomainBox(s_range=(-5.0, 5.0), v_range=(0.1, 20.0))


class IdealGas(EosModel):
    """
    Monatomic ideal gas in reduced units: U = U0 * (V/V0)**(-2/3) * exp(2(S - S0)/3).

    T = (2/3) U, P = (2/3) U / V, hence PV = T.
    """

    name = "ideal_gas"

    def __init__(self, *, domain: DomainBox | None = None) -> None:
        super().__init__(
            parameters={"s0": ENTROPY_OFFSET, "v0": REFERENCE_VOLUME, "u0": REFERENCE_ENERGY},
            domain=domain or DEFAULT_IDEAL_GAS_DOMAIN,
        )

    def energy(self, s: Scalar, v: Scalar) -> Scalar:
        return REFERENCE_ENERGY * (v / REFERENCE_VOLUME) ** (-2.0 / 3.0) * exp(2.0 * (s - ENTROPY_OFFSET) / 3.0)

    def temperature(self, s: Scalar, v: Scalar) -> Scalar:
        return (2.0 / 3.0) * self.energy(s, v)

    def pressure(self, s: Scalar, v: Scalar) -> Scalar:
        return (2.0 / 3.0) * self.energy(s, v) / v

    def energy_gradient(self, s: float, v: float) -> Gradient:
        u = float(self.energy(s, v))
        return (2.0 * u / 3.0, -2.0 * u / (3.0 * v))

    def temperature_gradient(self, s: float, v: float) -> Gradient:
        u = float(self.energy(s, v))
        return (4.0 * u / 9.0, -4.0 * u / (9.0 * v))

    def pressure_gradient(self, s: float, v: float) -> Gradient:
        u = float(self.energy(s, v))
        return (4.0 * u / (9.0 * v), -10.0 * u / (9.0 * v * v))


class VanDerWaals(EosModel):
    """
    Van der Waals fluid: U = (3/2) T - a/V with T = (2/3) (V - b)**(-2/3) exp(2S/3).

    P = T/(V - b) - a/V**2. The domain must stay single-phase and above V = b.
    """

    name = "van_der_waals"

    def __init__(self, a: float, b: float, *, domain: DomainBox | None = None) -> None:
        if a < 0.0 or b < 0.0:
            raise DomainError(f"van der Waals parameters must be >= 0, got a={a} b={b}")
        box = domain or DomainBox(s_range=(-1.0, 3.0), v_range=(max(b + 0.1, 2.0 * b, 0.1), 10.0))
        if box.v_range[0] <= b:
            raise DomainError(f"Domain volume floor {box.v_range[0]} must exceed b={b}")
        super().__init__(parameters={"a": float(a), "b": float(b)}, domain=box)
        self.a = float(a)
        self.b = float(b)
        self._require_positive_pressure()

    def _require_positive_pressure(self) -> None:
        # T > 0 everywhere. P > 0 iff (2/3) exp(2S/3) * g(V) > a with g(V) = V**2 / (V - b)**(5/3);
        # the left side grows with S and g has its only minimum at V = 6b, so one box point decides.
        (s_lo, _), (v_lo, v_hi) = self.domain.s_range, self.domain.v_range
        v_star = min(max(6.0 * self.b, v_lo), v_hi)
        reach = (2.0 / 3.0) * math.exp(2.0 * s_lo / 3.0) * v_star**2 / (v_star - self.b) ** (5.0 / 3.0)
        if reach <= self.a:
            s_floor = 1.5 * math.log(1.5 * self.a * (v_star - self.b) ** (5.0 / 3.0) / v_star**2)
            raise DomainError(
                f"van der Waals pressure is not positive on s={self.domain.s_range} v={self.domain.v_range} "
                f"(a={self.a:g}, b={self.b:g}, P <= 0 at ({s_lo:.6g}, {v_star:.6g})); raise the entropy floor above {s_floor:.6g}"
            )

    def contains(self, s: float, v: float, *, slack: float = 0.0) -> bool:
        return v > self.b and super().contains(s, v, slack=slack)

    def check_point(self, s: float, v: float) -> None:
        if v <= self.b:
            raise DomainError(f"V={v:.6g} <= b={self.b:.6g}")
        super().check_point(s, v)

    def temperature(self, s: Scalar, v: Scalar) -> Scalar:
        return (2.0 / 3.0) * (v - self.b) ** (-2.0 / 3.0) * exp(2.0 * s / 3.0)

    def energy(self, s: Scalar, v: Scalar) -> Scalar:
        return 1.5 * self.temperature(s, v) - self.a / v

    def pressure(self, s: Scalar, v: Scalar) -> Scalar:
        return self.temperature(s, v) / (v - self.b) - self.a / (v * v)

    def energy_gradient(self, s: float, v: float) -> Gradient:
        t = float(self.temperature(s, v))
        return (t, -t / (v - self.b) + self.a / (v * v))

    def temperature_gradient(self, s: float, v: float) -> Gradient:
        t = float(self.temperature(s, v))
        return (2.0 * t / 3.0, -2.0 * t / (3.0 * (v - self.b)))

    def pressure_gradient(self, s: float, v: float) -> Gradient:
        t = float(self.temperature(s, v))
        vb = v - self.b
        return (2.0 * t / (3.0 * vb), -5.0 * t / (3.0 * vb * vb) + 2.0 * self.a / (v**3))


class PressureCorruptedModel(EosModel):
    """
    Negative control: pressure replaced by P + S while U and T are left untouched.

    The result is not a consistent thermodynamic model; every exactness check must flag it.
    """

    def __init__(self, base: EosModel) -> None:
        super().__init__(
            parameters={**base.parameters, "pressure_shift": 1.0},
            domain=base.domain,
            has_analytic_derivatives=base.has_analytic_derivatives,
        )
        self.base = base
        self.name = f"{base.name}+corrupted_pressure"

    def contains(self, s: float, v: float, *, slack: float = 0.0) -> bool:
        return self.base.contains(s, v, slack=slack)

    def check_point(self, s: float, v: float) -> None:
        self.base.check_point(s, v)

    def energy(self, s: Scalar, v: Scalar) -> Scalar:
        return self.base.energy(s, v)

    def temperature(self, s: Scalar, v: Scalar) -> Scalar:
        return self.base.temperature(s, v)

    def pressure(self, s: Scalar, v: Scalar) -> Scalar:
        return self.base.pressure(s, v) + s

    def energy_gradient(self, s: float, v: float) -> Gradient:
        return self.base.energy_gradient(s, v)

    def temperature_gradient(self, s: float, v: float) -> Gradient:
        return self.base.temperature_gradient(s, v)

    def pressure_gradient(self, s: float, v: float) -> Gradient:
        p_s, p_v = self.base.pressure_gradient(s, v)
        return (p_s + 1.0, p_v)


def ideal_gas(*, domain: DomainBox | None = None) -> IdealGas:
    return IdealGas(domain=domain)


def van_der_waals(a: float, b: float, *, domain: DomainBox | None = None) -> VanDerWaals:
    return VanDerWaals(a, b, domain=domain)


def corrupt_pressure(model: EosModel) -> PressureCorruptedModel:
    return PressureCorruptedModel(model)


def evaluate(model: EosModel, pt: StatePoint) -> EosValues:
    """(U, T, P) at an (S, V) point inside the model domain."""
    if pt.chart is not Chart.SV:
        raise DomainError(f"evaluate expects an SV point, got chart {pt.chart.value}")
    s, v = pt.c1, pt.c2
    model.check_point(s, v)
    return EosValues(u=float(model.energy(s, v)), t=float(model.temperature(s, v)), p=float(model.pressure(s, v)))
