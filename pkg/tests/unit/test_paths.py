from __future__ import annotations

import math

import numpy as np
import pytest

from calculus.forms import TwoForm, differential_form, exterior_derivative, heat_form, work_form
from core.errors import DomainError, PathError, PathGenerationError, QuadratureError
from eos.models import DomainBox
from paths.curves import (
    Path,
    PathFamily,
    PathGenerator,
    concat,
    constant_path,
    generate_paths,
    rectangle_loop,
    segment,
)
from paths.integrals import Region, line_integral, loop_integral, quad_unit_interval, region_integral


# Closed forms on [0, 1] x [1, 2] for the ideal gas U = V^(-2/3) e^(2S/3).
DELTA_U = 2.0 ** (-2.0 / 3.0) * math.exp(2.0 / 3.0) - 1.0
RECT_HEAT = (math.exp(2.0 / 3.0) - 1.0) * (1.0 - 2.0 ** (-2.0 / 3.0))


def test_segment_geometry():
    p = segment((0.0, 1.0), (1.0, 2.0))
    assert p.start == (0.0, 1.0)
    assert p.end == (1.0, 2.0)
    assert p.point(0.25) == pytest.approx((0.25, 1.25))
    assert p.tangent(0.6) == (1.0, 1.0)
    r = p.reversed()
    assert r.start == p.end
    assert r.tangent(0.3) == (-1.0, -1.0)


def test_rectangle_loop_orientation_and_area():
    ccw = rectangle_loop((0.0, 1.0), (1.0, 2.0))
    cw = rectangle_loop((0.0, 1.0), (1.0, 2.0), clockwise=True)
    assert ccw.closed and cw.closed
    assert ccw.breakpoints == (0.25, 0.5, 0.75)
    assert ccw.signed_area() == pytest.approx(1.0, rel=1e-4)
    assert cw.signed_area() == pytest.approx(-1.0, rel=1e-4)
    with pytest.raises(PathError):
        rectangle_loop((1.0, 0.0), (1.0, 2.0))


def test_concat_rejects_gaps_and_open_closed_flags():
    a = segment((0.0, 1.0), (1.0, 1.0))
    b = segment((1.0, 1.5), (0.0, 1.0))
    with pytest.raises(PathError):
        concat([a, b])
    with pytest.raises(PathError):
        concat([])
    with pytest.raises(PathError):
        Path(s_of_t=lambda t: t, v_of_t=lambda t: 1.0, ds_dt=lambda t: 1.0, dv_dt=lambda t: 0.0, closed=True)


def test_split_pieces_meet():
    p = segment((0.0, 1.0), (1.0, 2.0))
    head, tail = p.split(0.3)
    assert head.end == pytest.approx(p.point(0.3))
    assert tail.start == pytest.approx(p.point(0.3))
    assert tail.end == p.end
    with pytest.raises(PathError):
        p.split(1.0)


def test_check_in_domain(unit_box):
    segment((0.1, 1.1), (0.9, 1.9)).check_in_domain(unit_box)
    with pytest.raises(PathError):
        segment((0.1, 1.1), (1.5, 1.9)).check_in_domain(unit_box)


@pytest.mark.parametrize("generator", list(PathGenerator))
def test_generated_paths_share_exact_endpoints_and_are_deterministic(generator, unit_box):
    family = PathFamily(generator=generator, seed=123, count=5, amplitude=0.05)
    ends = ((0.2, 1.2), (0.8, 1.7))
    first = generate_paths(family, ends, domain=unit_box)
    again = generate_paths(family, ends, domain=unit_box)
    assert len(first) == 5
    for a, b in zip(first, again):
        assert a.start == ends[0]
        assert a.end == ends[1]
        np.testing.assert_array_equal(a.sample(65)[1], b.sample(65)[1])
        np.testing.assert_array_equal(a.sample(65)[2], b.sample(65)[2])
        a.check_in_domain(unit_box)


def test_monotone_spline_paths_are_monotone(unit_box):
    family = PathFamily(generator=PathGenerator.MONOTONE_SPLINE, seed=9, count=4)
    for path in generate_paths(family, ((0.1, 1.1), (0.9, 1.8)), domain=unit_box):
        _, s, v = path.sample(257)
        assert np.all(np.diff(s) >= -1e-12)
        assert np.all(np.diff(v) >= -1e-12)


def test_path_family_validation_and_failures(unit_box):
    with pytest.raises(PathGenerationError):
        PathFamily(generator=PathGenerator.STRAIGHT_LINE, seed=0, count=0)
    with pytest.raises(DomainError):
        generate_paths(PathFamily(generator=PathGenerator.STRAIGHT_LINE, seed=0, count=1), ((0.0, 1.0), (2.0, 2.0)), domain=unit_box)
    thin = DomainBox(s_range=(0.0, 1.0), v_range=(1.0, 1.001))
    wild = PathFamily(generator=PathGenerator.FOURIER_PERTURBED, seed=1, count=1, amplitude=1.0, max_attempts=3)
    with pytest.raises(PathGenerationError):
        generate_paths(wild, ((0.0, 1.0), (1.0, 1.0)), domain=thin)


def test_line_integral_of_dU_matches_energy_difference(gas):
    value = line_integral(differential_form(gas), segment((0.0, 1.0), (1.0, 2.0)))
    assert value == pytest.approx(DELTA_U, abs=1e-10)
    assert line_integral(differential_form(gas), constant_path((0.5, 1.5))) == 0.0


def test_line_integral_is_additive_and_odd_under_reversal(gas):
    family = PathFamily(generator=PathGenerator.FOURIER_PERTURBED, seed=2, count=1)
    (path,) = generate_paths(family, ((0.0, 1.0), (1.0, 2.0)))
    heat = heat_form(gas)
    whole = line_integral(heat, path)
    head, tail = path.split(0.4)
    assert line_integral(heat, head) + line_integral(heat, tail) == pytest.approx(whole, abs=1e-9)
    assert line_integral(heat, path.reversed()) == pytest.approx(-whole, abs=1e-9)


def test_rectangle_loop_law(gas):
    rect = rectangle_loop((0.0, 1.0), (1.0, 2.0))
    assert abs(loop_integral(differential_form(gas), rect)) <= 1e-9
    heat = loop_integral(heat_form(gas), rect)
    pdv = -loop_integral(work_form(gas), rect)
    assert heat == pytest.approx(RECT_HEAT, abs=1e-9)
    assert pdv == pytest.approx(RECT_HEAT, abs=1e-9)
    assert heat == pytest.approx(0.35070, abs=1e-4)
    with pytest.raises(PathError):
        loop_integral(heat_form(gas), segment((0.0, 1.0), (1.0, 2.0)))


def test_green_on_rectangle_has_positive_sign(gas):
    rect = rectangle_loop((0.0, 1.0), (1.0, 2.0))
    region = region_integral(exterior_derivative(heat_form(gas)), Region.rectangle((0.0, 1.0), (1.0, 2.0)))
    assert region == pytest.approx(loop_integral(heat_form(gas), rect), abs=1e-8)
    assert region > 0.0


def test_region_from_loop_matches_rectangle(gas):
    loop_region = Region.from_loop(rectangle_loop((0.0, 1.0), (1.0, 2.0)))
    assert not loop_region.is_rectangle
    assert loop_region.area == pytest.approx(1.0, rel=1e-4)
    one = TwoForm(chart=differential_form(gas).chart, coeff=lambda _s, _v: 1.0)
    assert region_integral(one, loop_region) == pytest.approx(1.0, abs=1e-9)
    w = exterior_derivative(heat_form(gas))
    assert region_integral(w, loop_region) == pytest.approx(region_integral(w, Region.rectangle((0.0, 1.0), (1.0, 2.0))), abs=1e-8)


def test_region_rejects_bad_boundaries():
    with pytest.raises(PathError):
        Region.from_loop(rectangle_loop((0.0, 1.0), (1.0, 2.0), clockwise=True))
    with pytest.raises(PathError):
        Region()


def test_quadrature_failure_is_reported():
    with pytest.raises(QuadratureError):
        quad_unit_interval(lambda t: 1.0 / t)
