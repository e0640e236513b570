import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sftloc import Box, Disk, DomainError, DynamicSet, WholePlane, gauge_eval
from sftloc import boundary_point, contains, euclid_project, normal_cone_contains, vertices

from strategies import regions, vec

BOX = Box.from_max_norm(30, 350, 15)
DISK = Disk((210, 10), 10)


@pytest.mark.parametrize(
    "omega,x,inside",
    [
        (BOX, (30, 350), True),
        (BOX, (45, 335), True),
        (BOX, (45.1, 350), False),
        (DISK, (220, 10), True),
        (DISK, (220.01, 10), False),
    ],
)
def test_contains(omega, x, inside):
    assert contains(omega, x) is inside


@pytest.mark.parametrize(
    "omega,x,expected",
    [
        (BOX, (100, 100), (45, 335)),
        (BOX, (0, 400), (15, 365)),
        (BOX, (30, 340), (30, 340)),
        (DISK, (240, 50), (216, 18)),
        (WholePlane(), (1, 2), (1, 2)),
    ],
)
def test_euclid_project(omega, x, expected):
    assert euclid_project(omega, x) == pytest.approx(expected)


def test_vertices_order():
    v = vertices(BOX)
    assert [tuple(p) for p in v] == [(15, 335), (45, 335), (15, 365), (45, 365)]


def test_vertices_of_disk_is_error():
    with pytest.raises(DomainError):
        vertices(DISK)


@pytest.mark.parametrize("bad", [lambda: Box((0, 0), (0, 1)), lambda: Disk((0, 0), 0), lambda: Disk((0, 0), -2)])
def test_degenerate_sets_rejected(bad):
    with pytest.raises(ValueError):
        bad()


def test_box_boundary_loop():
    b = Box((0, 0), (2, 1))
    assert boundary_point(b, 0.0) == pytest.approx((-2, -1))
    assert boundary_point(b, 4 / 12) == pytest.approx((2, -1))
    assert boundary_point(b, 6 / 12) == pytest.approx((2, 1))
    assert boundary_point(b, 10 / 12) == pytest.approx((-2, 1))
    assert boundary_point(b, 1.0) == pytest.approx((-2, -1))


@given(regions(), st.floats(0, 1))
def test_boundary_points_are_on_boundary(omega, u):
    p = boundary_point(omega, u)
    assert contains(omega, p, 1e-9)
    if isinstance(omega, Disk):
        assert math.hypot(*(p - np.array(omega.center))) == pytest.approx(omega.radius)
    else:
        d = np.abs(p - np.array(omega.center)) - np.array(omega.half_extent)
        assert max(d) == pytest.approx(0.0, abs=1e-9)


@given(regions(), vec)
def test_projection_idempotent(omega, x):
    p = euclid_project(omega, x)
    assert contains(omega, p, 1e-9)
    assert euclid_project(omega, p) == pytest.approx(p)


@given(regions(), vec, vec)
def test_projection_nonexpansive(omega, x, y):
    px, py = euclid_project(omega, x), euclid_project(omega, y)
    assert np.hypot(*(px - py)) <= np.hypot(x[0] - y[0], x[1] - y[1]) + 1e-9


@given(regions(), vec)
def test_projection_residual_in_normal_cone(omega, x):
    p = euclid_project(omega, x)
    assert normal_cone_contains(omega, p, np.array(x) - p, tol=1e-7)


@pytest.mark.parametrize(
    "xbar,v,expected",
    [
        ((45, 365), (1, 1), True),
        ((45, 365), (1, -1), False),
        ((45, 350), (2, 0), True),
        ((45, 350), (2, 0.5), False),
        ((30, 350), (0, 0), True),
        ((30, 350), (1, 0), False),
    ],
)
def test_box_normal_cone(xbar, v, expected):
    assert normal_cone_contains(BOX, xbar, v) is expected


def test_disk_normal_cone():
    assert normal_cone_contains(DISK, (220, 10), (3, 0))
    assert not normal_cone_contains(DISK, (220, 10), (0, 1))
    with pytest.raises(DomainError):
        normal_cone_contains(DISK, (300, 300), (1, 0))


@given(st.floats(-0.9, 0.9), st.floats(-0.9, 0.9), vec)
def test_box_maximiser_is_a_vertex(s1, s2, x):
    # convex function over a box peaks at a corner: compare against dense perimeter sampling
    F = DynamicSet((s1 * 0.7, s2 * 0.7), 1.0)
    b = Box((10, -20), (7, 4))
    best_v = max(gauge_eval(F, np.array(x) - v) for v in vertices(b))
    sampled = max(gauge_eval(F, np.array(x) - boundary_point(b, u)) for u in np.linspace(0, 1, 400))
    assert best_v >= sampled - 1e-9
