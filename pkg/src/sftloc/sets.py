"""Convex target regions (axis-aligned boxes and disks) and constraint sets."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .gauge import DomainError, as_vec


def _pair(v, name):
    a = as_vec(v, name)
    return (float(a[0]), float(a[1]))


@dataclass(frozen=True)
class Box:
    """``{y : |y1 - c1| <= h1, |y2 - c2| <= h2}``."""

    center: tuple[float, float]
    half_extent: tuple[float, float]

    def __post_init__(self):
        object.__setattr__(self, "center", _pair(self.center, "center"))
        h = _pair(self.half_extent, "half_extent")
        if h[0] <= 0.0 or h[1] <= 0.0:
            raise ValueError(f"half extents must be positive, got {h}")
        object.__setattr__(self, "half_extent", h)

    @classmethod
    def from_max_norm(cls, a: float, b: float, c: float) -> "Box":
        """The box ``max{|x - a|, |y - b|} <= c``."""
        return cls((a, b), (c, c))

    @property
    def strictly_convex(self) -> bool:
        return False

    def translate(self, d) -> "Box":
        d = as_vec(d, "d")
        return Box((self.center[0] + d[0], self.center[1] + d[1]), self.half_extent)


@dataclass(frozen=True)
class Disk:
    """``{y : |y - c| <= radius}``."""

    center: tuple[float, float]
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", _pair(self.center, "center"))
        radius = float(self.radius)
        if not radius > 0.0 or not math.isfinite(radius):
            raise ValueError(f"radius must be positive, got {self.radius}")
        object.__setattr__(self, "radius", radius)

    @property
    def strictly_convex(self) -> bool:
        return True

    def translate(self, d) -> "Disk":
        d = as_vec(d, "d")
        return Disk((self.center[0] + d[0], self.center[1] + d[1]), self.radius)


ReferenceSet = Union[Box, Disk]


@dataclass(frozen=True)
class WholePlane:
    """The unconstrained case ``Omega_0 = R^2``."""


ConstraintSet = Union[WholePlane, Box, Disk]


def contains(omega: ReferenceSet, x, tol: float = 1e-12) -> bool:
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    x1, x2 = as_vec(x)
    c1, c2 = omega.center
    if isinstance(omega, Box):
        h1, h2 = omega.half_extent
        return bool(abs(x1 - c1) <= h1 + tol and abs(x2 - c2) <= h2 + tol)
    return bool(math.hypot(x1 - c1, x2 - c2) <= omega.radius + tol)


def euclid_project(omega: ConstraintSet, x) -> np.ndarray:
    """Nearest point of ``omega`` to ``x`` in the Euclidean norm."""
    x = as_vec(x)
    if isinstance(omega, WholePlane):
        return x.copy()
    c = np.array(omega.center)
    if isinstance(omega, Box):
        h = np.array(omega.half_extent)
        return np.clip(x, c - h, c + h)
    d = x - c
    n = math.hypot(*d)
    if n <= omega.radius:
        return x.copy()
    return c + d * (omega.radius / n)


def vertices(omega: ReferenceSet) -> list[np.ndarray]:
    """Corners of a box, ordered bottom-left, bottom-right, top-left, top-right."""
    if not isinstance(omega, Box):
        raise DomainError("only boxes have vertices")
    (c1, c2), (h1, h2) = omega.center, omega.half_extent
    return [
        np.array([c1 - h1, c2 - h2]),
        np.array([c1 + h1, c2 - h2]),
        np.array([c1 - h1, c2 + h2]),
        np.array([c1 + h1, c2 + h2]),
    ]


def boundary_point(omega: ReferenceSet, u: float) -> np.ndarray:
    """Point of the boundary loop at normalised parameter ``u`` (taken mod 1).

    Disks use the angle ``2 pi u`` from the positive first axis.  Boxes use
    perimeter arclength, counter-clockwise from the bottom-left corner.
    """
    u = float(u) % 1.0
    c1, c2 = omega.center
    if isinstance(omega, Disk):
        th = 2.0 * math.pi * u
        return np.array([c1 + omega.radius * math.cos(th), c2 + omega.radius * math.sin(th)])
    h1, h2 = omega.half_extent
    w, h = 2.0 * h1, 2.0 * h2
    s = u * 2.0 * (w + h)
    x0, y0 = c1 - h1, c2 - h2
    if s < w:
        return np.array([x0 + s, y0])
    s -= w
    if s < h:
        return np.array([x0 + w, y0 + s])
    s -= h
    if s < w:
        return np.array([x0 + w - s, y0 + h])
    s -= w
    return np.array([x0, y0 + h - s])


def normal_cone_contains(omega: ReferenceSet, xbar, v, tol: float = 1e-9) -> bool:
    """Whether ``v`` lies in the normal cone ``N(xbar; omega)``."""
    xbar = as_vec(xbar, "xbar")
    v = as_vec(v, "v")
    if not contains(omega, xbar, tol):
        raise DomainError("normal cone is empty outside the set")
    c = np.array(omega.center)
    if isinstance(omega, Box):
        h = np.array(omega.half_extent)
        d = xbar - c
        for k in range(2):
            upper = abs(d[k] - h[k]) <= tol
            lower = abs(d[k] + h[k]) <= tol
            if upper and v[k] < -tol:
                return False
            if lower and v[k] > tol:
                return False
            if not upper and not lower and abs(v[k]) > tol:
                return False
        return True
    d = xbar - c
    if abs(math.hypot(*d) - omega.radius) > tol:
        return bool(np.all(np.abs(v) <= tol))
    # v must be a nonnegative multiple of the outward radius
    cross = d[0] * v[1] - d[1] * v[0]
    return abs(cross) <= tol * max(1.0, math.hypot(*v)) * omega.radius and float(d @ v) >= -tol
