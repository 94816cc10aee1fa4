from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Sequence

import numpy as np
from scipy.interpolate import PchipInterpolator

from core.errors import DomainError, PathError, PathGenerationError
from eos.models import DomainBox
from utils.logging import get_logger


logger = get_logger(component="paths")

Curve = Callable[[float], float]
Point = tuple[float, float]

# Endpoints of a closed path must agree this closely (scaled by max(1, |x|)).
CLOSE_TOL = 1e-14

# Samples used for containment and area checks.
CHECK_SAMPLES = 513


def _close(a: float, b: float, tol: float = CLOSE_TOL) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def _lerp(a: float, b: float, u: float) -> float:
    # Exact at u = 0 and u = 1.
    return (1.0 - u) * a + u * b


def _pinned(fn: Curve, at_start: float, at_end: float) -> Curve:
    """Return `fn` with its values at t = 0 and t = 1 forced to the exact endpoints."""

    def pinned(t: float) -> float:
        if t <= 0.0:
            return at_start
        if t >= 1.0:
            return at_end
        return float(fn(t))

    return pinned


@dataclass(frozen=True)
class Path:
    """
    t -> (S(t), V(t)) on [0, 1] with its tangent.

    `breakpoints` lists interior parameters where the tangent may jump (corners of
    piecewise paths); quadrature splits there.
    """

    s_of_t: Curve
    v_of_t: Curve
    ds_dt: Curve
    dv_dt: Curve
    closed: bool = False
    breakpoints: tuple[float, ...] = ()
    label: str = field(default="path", compare=False)

    def __post_init__(self) -> None:
        if self.closed:
            (s0, v0), (s1, v1) = self.start, self.end
            if not (_close(s0, s1) and _close(v0, v1)):
                raise PathError(f"Closed path {self.label} does not return to its start: ({s0}, {v0}) vs ({s1}, {v1})")
        bad = [b for b in self.breakpoints if not 0.0 < b < 1.0]
        if bad:
            raise PathError(f"Breakpoints must lie strictly inside (0, 1), got {bad}")

    def point(self, t: float) -> Point:
        return float(self.s_of_t(t)), float(self.v_of_t(t))

    def tangent(self, t: float) -> Point:
        return float(self.ds_dt(t)), float(self.dv_dt(t))

    @property
    def start(self) -> Point:
        return self.point(0.0)

    @property
    def end(self) -> Point:
        return self.point(1.0)

    def sample(self, count: int = CHECK_SAMPLES) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        ts = np.linspace(0.0, 1.0, int(count))
        s = np.array([self.s_of_t(float(t)) for t in ts], dtype=float)
        v = np.array([self.v_of_t(float(t)) for t in ts], dtype=float)
        return ts, s, v

    def reversed(self) -> "Path":
        s, v, ds, dv = self.s_of_t, self.v_of_t, self.ds_dt, self.dv_dt
        return Path(
            s_of_t=lambda t: s(1.0 - t),
            v_of_t=lambda t: v(1.0 - t),
            ds_dt=lambda t: -ds(1.0 - t),
            dv_dt=lambda t: -dv(1.0 - t),
            closed=self.closed,
            breakpoints=tuple(sorted(1.0 - b for b in self.breakpoints)),
            label=f"reversed({self.label})",
        )

    def split(self, at: float) -> tuple["Path", "Path"]:
        """The pieces on [0, at] and [at, 1], each reparametrized to [0, 1]."""
        if not 0.0 < at < 1.0:
            raise PathError(f"Split parameter must lie in (0, 1), got {at}")
        s, v, ds, dv = self.s_of_t, self.v_of_t, self.ds_dt, self.dv_dt
        head = Path(
            s_of_t=lambda t: s(at * t),
            v_of_t=lambda t: v(at * t),
            ds_dt=lambda t: at * ds(at * t),
            dv_dt=lambda t: at * dv(at * t),
            breakpoints=tuple(b / at for b in self.breakpoints if b < at),
            label=f"{self.label}[0:{at:g}]",
        )
        rest = 1.0 - at
        tail = Path(
            s_of_t=lambda t: s(at + rest * t),
            v_of_t=lambda t: v(at + rest * t),
            ds_dt=lambda t: rest * ds(at + rest * t),
            dv_dt=lambda t: rest * dv(at + rest * t),
            breakpoints=tuple((b - at) / rest for b in self.breakpoints if b > at),
            label=f"{self.label}[{at:g}:1]",
        )
        return head, tail

    def check_in_domain(self, box: DomainBox, *, samples: int = CHECK_SAMPLES) -> None:
        _, s, v = self.sample(samples)
        (s_lo, s_hi), (v_lo, v_hi) = box.s_range, box.v_range
        outside = (s < s_lo) | (s > s_hi) | (v < v_lo) | (v > v_hi) | ~np.isfinite(s) | ~np.isfinite(v)
        if outside.any():
            i = int(np.argmax(outside))
            raise PathError(f"Path {self.label} leaves the domain box at ({s[i]:.6g}, {v[i]:.6g})")

    def signed_area(self, *, samples: int = 4 * CHECK_SAMPLES) -> float:
        """Shoelace area of a closed path; positive for counterclockwise traversal in (S, V)."""
        _, s, v = self.sample(samples)
        return 0.5 * float(np.sum(s[:-1] * v[1:] - s[1:] * v[:-1]))


def segment(start: Point, end: Point, *, label: str = "segment") -> Path:
    (s0, v0), (s1, v1) = (float(start[0]), float(start[1])), (float(end[0]), float(end[1]))
    ds, dv = s1 - s0, v1 - v0
    return Path(
        s_of_t=lambda t: _lerp(s0, s1, t),
        v_of_t=lambda t: _lerp(v0, v1, t),
        ds_dt=lambda _t: ds,
        dv_dt=lambda _t: dv,
        label=label,
    )


def concat(paths: Sequence[Path], *, label: str = "chain") -> Path:
    """
    Join paths head to tail; piece k runs on [k/n, (k+1)/n].

    The result is closed when the last piece ends where the first starts.
    """
    pieces = list(paths)
    if not pieces:
        raise PathError("Cannot concatenate an empty list of paths")
    for a, b in zip(pieces, pieces[1:]):
        (sa, va), (sb, vb) = a.end, b.start
        if not (_close(sa, sb, 1e-12) and _close(va, vb, 1e-12)):
            raise PathError(f"Gap between {a.label} and {b.label}: ({sa}, {va}) -> ({sb}, {vb})")
    n = len(pieces)

    def locate(t: float) -> tuple[Path, float]:
        k = min(int(t * n), n - 1) if t > 0.0 else 0
        return pieces[k], t * n - k

    breakpoints = [k / n for k in range(1, n)]
    for k, p in enumerate(pieces):
        breakpoints.extend((k + b) / n for b in p.breakpoints)

    (s0, v0), (s1, v1) = pieces[0].start, pieces[-1].end
    return Path(
        s_of_t=lambda t: locate(t)[0].s_of_t(locate(t)[1]),
        v_of_t=lambda t: locate(t)[0].v_of_t(locate(t)[1]),
        ds_dt=lambda t: n * locate(t)[0].ds_dt(locate(t)[1]),
        dv_dt=lambda t: n * locate(t)[0].dv_dt(locate(t)[1]),
        closed=_close(s0, s1) and _close(v0, v1),
        breakpoints=tuple(sorted(breakpoints)),
        label=label,
    )


def rectangle_loop(s_range: tuple[float, float], v_range: tuple[float, float], *, clockwise: bool = False) -> Path:
    """Boundary of an axis-aligned rectangle, counterclockwise in (S, V) unless `clockwise`."""
    (s0, s1), (v0, v1) = s_range, v_range
    if not (s0 < s1 and v0 < v1):
        raise PathError(f"Rectangle needs positive area, got s={s_range} v={v_range}")
    corners = [(s0, v0), (s1, v0), (s1, v1), (s0, v1), (s0, v0)]
    if clockwise:
        corners.reverse()
    edges = [segment(a, b, label=f"edge{k}") for k, (a, b) in enumerate(zip(corners, corners[1:]))]
    return concat(edges, label=f"rect[{s0:g},{s1:g}]x[{v0:g},{v1:g}]")


def constant_path(point: Point) -> Path:
    return segment(point, point, label="constant")


# --- path families ---


class PathGenerator(str, Enum):
    STRAIGHT_LINE = "straight_line"
    MONOTONE_SPLINE = "monotone_spline"
    FOURIER_PERTURBED = "fourier_perturbed"


@dataclass(frozen=True)
class PathFamily:
    """
    Seeded recipe for `count` distinct paths sharing their endpoints.

    `amplitude` is the largest Fourier coefficient of a perturbation; `modes` the
    number of sin(k pi t) terms; `max_attempts` bounds resampling of paths that leave
    the domain box.
    """

    generator: PathGenerator
    seed: int
    count: int
    amplitude: float = 0.1
    modes: int = 5
    knots: int = 3
    max_attempts: int = 100

    def __post_init__(self) -> None:
        if int(self.count) < 1:
            raise PathGenerationError(f"Path family needs count >= 1, got {self.count}")
        if self.amplitude < 0.0 or not math.isfinite(self.amplitude):
            raise PathGenerationError(f"Perturbation amplitude must be finite and >= 0, got {self.amplitude}")
        if int(self.modes) < 1 or int(self.knots) < 1 or int(self.max_attempts) < 1:
            raise PathGenerationError("modes, knots and max_attempts must all be >= 1")


def _reparametrized_line(start: Point, end: Point, power: float, label: str) -> Path:
    (s0, v0), (s1, v1) = start, end
    ds, dv = s1 - s0, v1 - v0
    return Path(
        s_of_t=lambda t: _lerp(s0, s1, t**power),
        v_of_t=lambda t: _lerp(v0, v1, t**power),
        ds_dt=lambda t: ds * power * t ** (power - 1.0),
        dv_dt=lambda t: dv * power * t ** (power - 1.0),
        label=label,
    )


def _monotone_spline(start: Point, end: Point, rng: np.random.Generator, knots: int, label: str) -> Path:
    (s0, v0), (s1, v1) = start, end
    t_knots = np.linspace(0.0, 1.0, knots + 2)
    # Independent sorted fractions keep both coordinates monotone between the endpoints.
    fs = np.concatenate(([0.0], np.sort(rng.uniform(0.0, 1.0, size=knots)), [1.0]))
    fv = np.concatenate(([0.0], np.sort(rng.uniform(0.0, 1.0, size=knots)), [1.0]))
    phi_s = PchipInterpolator(t_knots, fs)
    phi_v = PchipInterpolator(t_knots, fv)
    dphi_s = phi_s.derivative()
    dphi_v = phi_v.derivative()
    return Path(
        s_of_t=_pinned(lambda t: _lerp(s0, s1, float(phi_s(t))), s0, s1),
        v_of_t=_pinned(lambda t: _lerp(v0, v1, float(phi_v(t))), v0, v1),
        ds_dt=lambda t: (s1 - s0) * float(dphi_s(t)),
        dv_dt=lambda t: (v1 - v0) * float(dphi_v(t)),
        breakpoints=tuple(float(x) for x in t_knots[1:-1]),
        label=label,
    )


def _fourier_coefficients(rng: np.random.Generator, modes: int, amplitude: float) -> tuple[np.ndarray, np.ndarray]:
    k = np.arange(1, modes + 1, dtype=float)
    a = rng.uniform(-1.0, 1.0, size=modes) / k
    b = rng.uniform(-1.0, 1.0, size=modes) / k
    peak = float(max(np.max(np.abs(a)), np.max(np.abs(b))))
    scale = amplitude / peak if peak > 0.0 else 0.0
    return a * scale, b * scale


def fourier_perturbation(base: Path, a: np.ndarray, b: np.ndarray, *, label: str = "perturbed") -> Path:
    """base + sum_k (a_k, b_k) sin(k pi t); the perturbation is exactly zero at t = 0 and t = 1."""
    k = np.arange(1, len(a) + 1, dtype=float) * math.pi
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)

    def bump(coef: np.ndarray) -> Curve:
        return lambda t: 0.0 if t <= 0.0 or t >= 1.0 else float(np.dot(coef, np.sin(k * t)))

    def slope(coef: np.ndarray) -> Curve:
        return lambda t: float(np.dot(coef * k, np.cos(k * t)))

    ds_bump, dv_bump = bump(a), bump(b)
    ds_slope, dv_slope = slope(a), slope(b)
    return Path(
        s_of_t=lambda t: base.s_of_t(t) + ds_bump(t),
        v_of_t=lambda t: base.v_of_t(t) + dv_bump(t),
        ds_dt=lambda t: base.ds_dt(t) + ds_slope(t),
        dv_dt=lambda t: base.dv_dt(t) + dv_slope(t),
        breakpoints=base.breakpoints,
        label=label,
    )


def _inside(path: Path, box: DomainBox | None) -> bool:
    if box is None:
        return True
    try:
        path.check_in_domain(box)
    except PathError:
        return False
    return True


def generate_paths(
    family: PathFamily,
    endpoints: tuple[Point, Point],
    *,
    domain: DomainBox | None = None,
    base: Path | None = None,
) -> list[Path]:
    """
    Deterministic list of `family.count` paths from endpoints[0] to endpoints[1].

    straight_line returns the segment followed by reparametrizations t**(1 + j/2);
    monotone_spline draws PCHIP curves through sorted random knots; fourier_perturbed
    adds seeded sin(k pi t) perturbations to `base` (the segment by default). Paths that
    leave `domain` are redrawn up to `family.max_attempts` times.
    """
    start = (float(endpoints[0][0]), float(endpoints[0][1]))
    end = (float(endpoints[1][0]), float(endpoints[1][1]))
    if domain is not None:
        for s, v in (start, end):
            if not domain.contains(s, v):
                raise DomainError(f"Endpoint ({s:.6g}, {v:.6g}) outside the domain box")
    if base is not None and (base.start != start or base.end != end):
        raise PathGenerationError(f"Base path runs {base.start} -> {base.end}, expected {start} -> {end}")

    generator = PathGenerator(family.generator)
    rng = np.random.default_rng(int(family.seed))
    line = base or segment(start, end, label="base")
    out: list[Path] = []

    for j in range(int(family.count)):
        label = f"{generator.value}[{j}]"
        if generator is PathGenerator.STRAIGHT_LINE:
            path = line if j == 0 else _reparametrized_line(start, end, 1.0 + 0.5 * j, label)
            if not _inside(path, domain):
                raise PathGenerationError(f"Straight line {start} -> {end} leaves the domain box")
            out.append(path)
            continue

        for attempt in range(int(family.max_attempts)):
            if generator is PathGenerator.MONOTONE_SPLINE:
                path = _monotone_spline(start, end, rng, int(family.knots), label)
            else:
                a, b = _fourier_coefficients(rng, int(family.modes), float(family.amplitude))
                path = fourier_perturbation(line, a, b, label=label)
            if _inside(path, domain):
                break
            logger.debug("path_resampled", generator=generator.value, index=j, attempt=attempt)
        else:
            raise PathGenerationError(
                f"{generator.value} path {j} left the domain box in all {family.max_attempts} attempts"
            )
        out.append(path)

    return out
