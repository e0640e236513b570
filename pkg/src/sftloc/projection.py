"""Generalized nearest and farthest projections onto reference sets.

``set_gauge`` computes ``rho_F^Omega(x) = min_{w in Omega} rho_F(x - w)``, the
time to reach ``x`` from the best point of ``Omega``.  ``msmg`` computes the
maximal counterpart ``max_{w in Omega} rho_F(x - w)``.  Both return the
attaining point of ``Omega`` as a witness.

Methods:

* box, nearest: golden-section search along each of the four edges (the
  objective is convex on a segment), best edge wins;
* box, farthest: exact evaluation at the four corners;
* disk: closed form.  ``Omega + tF`` is the disk of center ``c + t s`` and
  radius ``R + t r``, so the nearest time solves a quadratic, and the
  farthest time solves the quadratic for ``Omega`` fitting inside ``x - tF``.
  The boundary search (a 720-point angular grid, then golden-section
  refinement around the best grid point) is kept as ``method="search"`` and
  cross-checked against the closed form in the tests.

``euclid_witness`` is the cruder scoring rule used to produce the published
experiment tables: the leg is flown to/from the Euclidean nearest (or
farthest) point of the target rather than the time-optimal one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .gauge import DynamicSet, _gauge, as_vec
from .sets import Box, Disk, ReferenceSet

KIND_BOX = 0
KIND_DISK = 1

ANGLE_GRID = 720
_GOLD = (math.sqrt(5.0) - 1.0) / 2.0
_MAX_GSS_ITERS = 200
_GSS_RTOL = 1e-12
INSIDE_TOL = 1e-12


@dataclass(frozen=True)
class ProjectionResult:
    value: float
    witness: np.ndarray
    at_boundary: bool


@njit(nogil=True)
def _seg_obj(s1, s2, r, x1, x2, p1, p2, q1, q2, u, sign):
    return sign * _gauge(s1, s2, r, x1 - (p1 + u * q1), x2 - (p2 + u * q2))


@njit(nogil=True)
def _gss_segment(s1, s2, r, x1, x2, p1, p2, q1, q2, lo, hi, sign):
    """Minimise sign * rho(x - (p + u q)) over u in [lo, hi]."""
    a, b = lo, hi
    tol = _GSS_RTOL * (hi - lo)
    c = b - _GOLD * (b - a)
    d = a + _GOLD * (b - a)
    fc = _seg_obj(s1, s2, r, x1, x2, p1, p2, q1, q2, c, sign)
    fd = _seg_obj(s1, s2, r, x1, x2, p1, p2, q1, q2, d, sign)
    for _ in range(_MAX_GSS_ITERS):
        if b - a <= tol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _GOLD * (b - a)
            fc = _seg_obj(s1, s2, r, x1, x2, p1, p2, q1, q2, c, sign)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLD * (b - a)
            fd = _seg_obj(s1, s2, r, x1, x2, p1, p2, q1, q2, d, sign)
    u = 0.5 * (a + b)
    return u, _seg_obj(s1, s2, r, x1, x2, p1, p2, q1, q2, u, sign)


@njit(nogil=True)
def _arc_obj(s1, s2, r, x1, x2, c1, c2, R, th, sign):
    return sign * _gauge(s1, s2, r, x1 - (c1 + R * math.cos(th)), x2 - (c2 + R * math.sin(th)))


@njit(nogil=True)
def _gss_arc(s1, s2, r, x1, x2, c1, c2, R, lo, hi, sign):
    a, b = lo, hi
    tol = _GSS_RTOL * (hi - lo)
    c = b - _GOLD * (b - a)
    d = a + _GOLD * (b - a)
    fc = _arc_obj(s1, s2, r, x1, x2, c1, c2, R, c, sign)
    fd = _arc_obj(s1, s2, r, x1, x2, c1, c2, R, d, sign)
    for _ in range(_MAX_GSS_ITERS):
        if b - a <= tol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _GOLD * (b - a)
            fc = _arc_obj(s1, s2, r, x1, x2, c1, c2, R, c, sign)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLD * (b - a)
            fd = _arc_obj(s1, s2, r, x1, x2, c1, c2, R, d, sign)
    th = 0.5 * (a + b)
    return th, _arc_obj(s1, s2, r, x1, x2, c1, c2, R, th, sign)


@njit(nogil=True)
def _disk_search(s1, s2, r, x1, x2, c1, c2, R, sign):
    """Minimise sign * rho(x - w) over the circle; returns (value, w1, w2)."""
    step = 2.0 * math.pi / ANGLE_GRID
    best_k = 0
    best = _arc_obj(s1, s2, r, x1, x2, c1, c2, R, 0.0, sign)
    for k in range(1, ANGLE_GRID):
        f = _arc_obj(s1, s2, r, x1, x2, c1, c2, R, k * step, sign)
        if f < best:
            best = f
            best_k = k
    th_grid = best_k * step
    th, f = _gss_arc(s1, s2, r, x1, x2, c1, c2, R, th_grid - step, th_grid + step, sign)
    if not f < best:
        th = th_grid
        f = best
    return sign * f, c1 + R * math.cos(th), c2 + R * math.sin(th)


@njit(nogil=True)
def _disk_closed(s1, s2, r, x1, x2, c1, c2, R, far):
    """Exact disk case; returns (value, w1, w2).  Nearest assumes x outside the disk."""
    d1, d2 = x1 - c1, x2 - c2
    a = s1 * s1 + s2 * s2 - r * r  # < 0 for admissible dynamics
    c0 = d1 * d1 + d2 * d2 - R * R
    ds = d1 * s1 + d2 * s2
    if not far:
        # a t^2 - 2 (d.s + R r) t + c0 = 0 has one positive root since a < 0 < c0
        b = ds + R * r
        t = c0 / (b + math.sqrt(max(b * b - a * c0, 0.0)))
    else:
        # |d - t s| + R = t r, larger root
        b = ds - R * r
        sq = math.sqrt(max(b * b - a * c0, 0.0))
        t = c0 / (b + sq) if b > 0.0 else (sq - b) / (-a)
    v1, v2 = d1 - t * s1, d2 - t * s2
    n = math.hypot(v1, v2)
    if n == 0.0:
        # x - t s is the center; every boundary point ties, take angle zero
        return t, c1 + R, c2
    if far:
        return t, c1 - R * v1 / n, c2 - R * v2 / n
    return t, c1 + R * v1 / n, c2 + R * v2 / n


@njit(nogil=True)
def _nearest(kind, c1, c2, a, b, s1, s2, r, x1, x2):
    """Returns (value, w1, w2, at_boundary)."""
    if kind == KIND_BOX:
        if abs(x1 - c1) <= a + INSIDE_TOL and abs(x2 - c2) <= b + INSIDE_TOL:
            return 0.0, x1, x2, False
        # counter-clockwise from the bottom-left corner
        px = (c1 - a, c1 + a, c1 + a, c1 - a)
        py = (c2 - b, c2 - b, c2 + b, c2 + b)
        best = np.inf
        w1 = px[0]
        w2 = py[0]
        for e in range(4):
            p1, p2 = px[e], py[e]
            q1, q2 = px[(e + 1) % 4] - p1, py[(e + 1) % 4] - p2
            u, f = _gss_segment(s1, s2, r, x1, x2, p1, p2, q1, q2, 0.0, 1.0, 1.0)
            f0 = _seg_obj(s1, s2, r, x1, x2, p1, p2, q1, q2, 0.0, 1.0)
            if f0 <= f:
                u, f = 0.0, f0
            if f < best:
                best = f
                w1 = p1 + u * q1
                w2 = p2 + u * q2
        return best, w1, w2, True
    if math.hypot(x1 - c1, x2 - c2) <= a + INSIDE_TOL:
        return 0.0, x1, x2, False
    v, w1, w2 = _disk_closed(s1, s2, r, x1, x2, c1, c2, a, False)
    return v, w1, w2, True


@njit(nogil=True)
def _farthest(kind, c1, c2, a, b, s1, s2, r, x1, x2):
    if kind == KIND_BOX:
        # vertex order: bottom-left, bottom-right, top-left, top-right
        px = (c1 - a, c1 + a, c1 - a, c1 + a)
        py = (c2 - b, c2 - b, c2 + b, c2 + b)
        best = -1.0
        w1 = px[0]
        w2 = py[0]
        for k in range(4):
            f = _gauge(s1, s2, r, x1 - px[k], x2 - py[k])
            if f > best:
                best = f
                w1 = px[k]
                w2 = py[k]
        return best, w1, w2, True
    v, w1, w2 = _disk_closed(s1, s2, r, x1, x2, c1, c2, a, True)
    return v, w1, w2, True


@njit(nogil=True)
def _euclid_point(kind, c1, c2, a, b, x1, x2, far):
    """Euclidean nearest (far=False) or farthest point of the set; returns (w1, w2, inside)."""
    d1, d2 = x1 - c1, x2 - c2
    if kind == KIND_BOX:
        if not far:
            w1 = min(max(x1, c1 - a), c1 + a)
            w2 = min(max(x2, c2 - b), c2 + b)
            return w1, w2, abs(d1) <= a + INSIDE_TOL and abs(d2) <= b + INSIDE_TOL
        px = (c1 - a, c1 + a, c1 - a, c1 + a)
        py = (c2 - b, c2 - b, c2 + b, c2 + b)
        best = -1.0
        w1, w2 = px[0], py[0]
        for k in range(4):
            dd = math.hypot(x1 - px[k], x2 - py[k])
            if dd > best:
                best = dd
                w1, w2 = px[k], py[k]
        return w1, w2, False
    n = math.hypot(d1, d2)
    if not far:
        if n <= a + INSIDE_TOL:
            return x1, x2, True
        return c1 + a * d1 / n, c2 + a * d2 / n, False
    if n == 0.0:
        return c1 - a, c2, False
    return c1 - a * d1 / n, c2 - a * d2 / n, False


@njit(nogil=True)
def _euclid_jacobian(kind, c1, c2, a, b, x1, x2, far):
    """Jacobian of x -> x - w(x) for the Euclidean witness w; returns (j11, j12, j22)."""
    d1, d2 = x1 - c1, x2 - c2
    if kind == KIND_BOX:
        if far:
            return 1.0, 0.0, 1.0
        return (1.0 if abs(d1) > a else 0.0), 0.0, (1.0 if abs(d2) > b else 0.0)
    n = math.hypot(d1, d2)
    if n == 0.0:
        return 1.0, 0.0, 1.0
    u1, u2 = d1 / n, d2 / n
    k = a / n if far else -a / n
    return 1.0 + k * (1.0 - u1 * u1), -k * u1 * u2, 1.0 + k * (1.0 - u2 * u2)


def shape_params(omega: ReferenceSet) -> tuple[int, float, float, float, float]:
    """Flat ``(kind, c1, c2, a, b)`` encoding used by the compiled kernels."""
    c1, c2 = omega.center
    if isinstance(omega, Box):
        return KIND_BOX, c1, c2, omega.half_extent[0], omega.half_extent[1]
    if isinstance(omega, Disk):
        return KIND_DISK, c1, c2, omega.radius, omega.radius
    raise TypeError(f"not a reference set: {omega!r}")


def _check_method(method, omega):
    if method not in ("auto", "search"):
        raise ValueError(f"method must be 'auto' or 'search', got {method!r}")
    return method == "search" and isinstance(omega, Disk)


def set_gauge(F: DynamicSet, omega: ReferenceSet, x, method: str = "auto") -> ProjectionResult:
    """Minimal time to reach ``x`` from ``omega`` under dynamics ``F``.

    ``method="search"`` replaces the disk closed form by the angular boundary search.
    """
    x1, x2 = as_vec(x)
    kind, c1, c2, a, b = shape_params(omega)
    s1, s2 = F.wind
    if _check_method(method, omega) and math.hypot(x1 - c1, x2 - c2) > a + INSIDE_TOL:
        v, w1, w2 = _disk_search(s1, s2, F.speed, x1, x2, c1, c2, a, 1.0)
        return ProjectionResult(float(v), np.array([w1, w2]), True)
    v, w1, w2, bd = _nearest(kind, c1, c2, a, b, s1, s2, F.speed, x1, x2)
    return ProjectionResult(float(v), np.array([w1, w2]), bool(bd))


def msmg(F: DynamicSet, omega: ReferenceSet, x, method: str = "auto") -> ProjectionResult:
    """Time to reach ``x`` from the farthest point of ``omega`` under ``F``."""
    x1, x2 = as_vec(x)
    kind, c1, c2, a, b = shape_params(omega)
    s1, s2 = F.wind
    if _check_method(method, omega):
        v, w1, w2 = _disk_search(s1, s2, F.speed, x1, x2, c1, c2, a, -1.0)
        return ProjectionResult(float(v), np.array([w1, w2]), True)
    v, w1, w2, bd = _farthest(kind, c1, c2, a, b, s1, s2, F.speed, x1, x2)
    return ProjectionResult(float(v), np.array([w1, w2]), bool(bd))


def euclid_witness(F: DynamicSet, omega: ReferenceSet, x, farthest: bool = False) -> ProjectionResult:
    """Flight time between ``x`` and the Euclidean nearest/farthest point of ``omega``."""
    x1, x2 = as_vec(x)
    kind, c1, c2, a, b = shape_params(omega)
    w1, w2, inside = _euclid_point(kind, c1, c2, a, b, x1, x2, farthest)
    if inside:
        return ProjectionResult(0.0, np.array([x1, x2]), False)
    v = _gauge(F.wind[0], F.wind[1], F.speed, x1 - w1, x2 - w2)
    return ProjectionResult(float(v), np.array([w1, w2]), True)


def r_enlargement_contains(F: DynamicSet, omega: ReferenceSet, r: float, x) -> bool:
    """Membership of ``x`` in ``omega + r F``."""
    if not r > 0:
        raise ValueError(f"r must be positive, got {r}")
    return set_gauge(F, omega, x).value <= r + 1e-9
