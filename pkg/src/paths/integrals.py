from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

from scipy import integrate

from calculus.forms import OneForm, TwoForm
from core.errors import PathError, QuadratureError
from core.tolerances import DEFAULT_TOLERANCES, Tolerances
from eos.models import DomainBox
from paths.curves import CHECK_SAMPLES, Path, rectangle_loop


QUAD_LIMIT = 200


def quad_unit_interval(
    integrand: Callable[[float], float],
    *,
    breakpoints: tuple[float, ...] = (),
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    label: str = "integral",
) -> float:
    """
    Adaptive Gauss-Kronrod quadrature of `integrand` over [0, 1] to tolerances.quad_abs.

    QUADPACK warnings are returned through full_output and raised as QuadratureError.
    """
    points = sorted({float(b) for b in breakpoints if 0.0 < b < 1.0})
    result = integrate.quad(
        integrand,
        0.0,
        1.0,
        epsabs=tolerances.quad_abs,
        epsrel=0.0,
        limit=QUAD_LIMIT,
        points=points or None,
        full_output=1,
    )
    value, abserr = float(result[0]), float(result[1])
    if len(result) > 3:
        raise QuadratureError(f"{label}: {result[3]} (estimate={value:.6g}, abserr={abserr:.3g})")
    if not math.isfinite(value):
        raise QuadratureError(f"{label}: non-finite result {value}")
    return value


def line_integral(
    f: OneForm,
    gamma: Path,
    *,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    domain: DomainBox | None = None,
) -> float:
    """
    int_0^1 [comp1(gamma(t)) s'(t) + comp2(gamma(t)) v'(t)] dt.

    The path coordinates are read as the form's chart coordinates. With `domain`, the
    path image is checked against the box first.
    """
    if domain is not None:
        gamma.check_in_domain(domain)

    def integrand(t: float) -> float:
        s, v = gamma.s_of_t(t), gamma.v_of_t(t)
        ds, dv = gamma.ds_dt(t), gamma.dv_dt(t)
        if ds == 0.0 and dv == 0.0:
            return 0.0
        a, b = f.at((s, v))
        return a * ds + b * dv

    return quad_unit_interval(integrand, breakpoints=gamma.breakpoints, tolerances=tolerances, label=f"int_{gamma.label} {f.label}")


def loop_integral(
    f: OneForm,
    gamma: Path,
    *,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    domain: DomainBox | None = None,
) -> float:
    if not gamma.closed:
        raise PathError(f"loop_integral needs a closed path, {gamma.label} is open")
    return line_integral(f, gamma, tolerances=tolerances, domain=domain)


@dataclass(frozen=True)
class Region:
    """
    A region of the (S, V) plane: an axis-aligned rectangle or the inside of a simple
    counterclockwise loop that is star-shaped about `center`.
    """

    s_range: tuple[float, float] | None = None
    v_range: tuple[float, float] | None = None
    boundary: Path | None = None
    center: tuple[float, float] | None = None

    def __post_init__(self) -> None:
        is_rect = self.s_range is not None and self.v_range is not None
        if is_rect == (self.boundary is not None):
            raise PathError("Region needs either a rectangle (s_range, v_range) or a boundary loop")
        if is_rect:
            (s0, s1), (v0, v1) = self.s_range, self.v_range  # type: ignore[misc]
            if not (s0 < s1 and v0 < v1):
                raise PathError(f"Rectangle needs positive area, got s={self.s_range} v={self.v_range}")
            return
        loop = self.boundary
        assert loop is not None
        if not loop.closed:
            raise PathError(f"Region boundary {loop.label} is not closed")
        if not loop.signed_area() > 0.0:
            raise PathError(f"Region boundary {loop.label} must run counterclockwise with positive area")

    @classmethod
    def rectangle(cls, s_range: tuple[float, float], v_range: tuple[float, float]) -> "Region":
        return cls(s_range=(float(s_range[0]), float(s_range[1])), v_range=(float(v_range[0]), float(v_range[1])))

    @classmethod
    def from_loop(cls, loop: Path, center: tuple[float, float] | None = None) -> "Region":
        if center is None:
            _, s, v = loop.sample(CHECK_SAMPLES)
            # Drop the repeated endpoint so the start is not counted twice.
            center = (float(s[:-1].mean()), float(v[:-1].mean()))
        return cls(boundary=loop, center=(float(center[0]), float(center[1])))

    @property
    def is_rectangle(self) -> bool:
        return self.boundary is None

    def boundary_path(self) -> Path:
        if self.boundary is not None:
            return self.boundary
        return rectangle_loop(self.s_range, self.v_range)  # type: ignore[arg-type]

    @property
    def area(self) -> float:
        if self.is_rectangle:
            (s0, s1), (v0, v1) = self.s_range, self.v_range  # type: ignore[misc]
            return (s1 - s0) * (v1 - v0)
        return self.boundary_path().signed_area()


def _dblquad(func: Callable[[float, float], float], a: float, b: float, c: float, d: float, tolerances: Tolerances, label: str) -> float:
    # func(inner, outer); scipy reports trouble as IntegrationWarning, which is raised here.
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            value, _ = integrate.dblquad(func, a, b, c, d, epsabs=tolerances.quad_abs, epsrel=0.0)
        except integrate.IntegrationWarning as e:
            raise QuadratureError(f"{label}: {e}") from e
    return float(value)


def region_integral(w: TwoForm, region: Region, *, tolerances: Tolerances = DEFAULT_TOLERANCES) -> float:
    """
    Integral of coeff dc1 ^ dc2 over the region, oriented so that a positive coefficient
    gives a positive value.
    """
    if region.is_rectangle:
        (s0, s1), (v0, v1) = region.s_range, region.v_range  # type: ignore[misc]
        return _dblquad(lambda v, s: w.at((s, v)), s0, s1, v0, v1, tolerances, f"region {w.label}")

    loop = region.boundary
    assert loop is not None and region.center is not None
    cs, cv = region.center

    # (r, t) -> c + r (gamma(t) - c), Jacobian r [(s - cs) v' - (v - cv) s'].
    def integrand(r: float, t: float) -> float:
        s, v = loop.point(t)
        ds, dv = loop.tangent(t)
        x, y = cs + r * (s - cs), cv + r * (v - cv)
        return w.at((x, y)) * r * ((s - cs) * dv - (v - cv) * ds)

    cuts = [0.0, *sorted(loop.breakpoints), 1.0]
    return sum(
        _dblquad(integrand, t0, t1, 0.0, 1.0, tolerances, f"region {w.label} t in [{t0:g}, {t1:g}]")
        for t0, t1 in zip(cuts, cuts[1:])
    )
