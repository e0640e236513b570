"""Minkowski gauges of wind-shifted speed disks in the plane.

A vehicle with nominal speed ``r`` flying in a wind ``s`` can realise any
velocity in the disk ``F = {f : |f - s| <= r}``.  The gauge ``rho_F(x)`` is
the shortest time ``t`` with ``x`` in ``t F``, i.e. the flight time along the
displacement ``x``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

# speed - |wind| below this is rejected; keeps the Lipschitz modulus bounded
ADMISSIBILITY_MARGIN = 1e-9


class DomainError(ValueError):
    """Raised when an operation is called outside its domain."""


def as_vec(x, name: str = "x") -> np.ndarray:
    """Coerce ``x`` to a finite float array of shape (2,)."""
    v = np.asarray(x, dtype=float).reshape(-1)
    if v.shape != (2,):
        raise ValueError(f"{name} must have exactly two components, got {v.shape[0]}")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} must be finite, got {v.tolist()}")
    return v


@njit(nogil=True)
def _gauge(s1, s2, r, x1, x2):
    if x1 == 0.0 and x2 == 0.0:
        return 0.0
    # work on x / max|x_i| so tiny or huge inputs neither underflow nor overflow
    m = max(abs(x1), abs(x2))
    x1 /= m
    x2 /= m
    beta = x1 * x1 * (r * r - s2 * s2) + x2 * x2 * (r * r - s1 * s1) + 2.0 * s1 * s2 * x1 * x2
    if beta < 0.0:
        beta = 0.0
    # ((s.x) - sqrt(beta)) / (|s|^2 - r^2), rationalised; s.x + sqrt(beta) > 0 for x != 0
    return m * (x1 * x1 + x2 * x2) / ((s1 * x1 + s2 * x2) + math.sqrt(beta))


@njit(nogil=True)
def _gauge_grad(s1, s2, r, x1, x2):
    # the gradient is 0-homogeneous, so normalising x changes nothing but rounding
    m = max(abs(x1), abs(x2))
    x1 /= m
    x2 /= m
    beta = x1 * x1 * (r * r - s2 * s2) + x2 * x2 * (r * r - s1 * s1) + 2.0 * s1 * s2 * x1 * x2
    if beta < 0.0:
        beta = 0.0
    sb = math.sqrt(beta)
    alpha = 1.0 / (s1 * s1 + s2 * s2 - r * r)
    g1 = alpha * (s1 - (x1 * (r * r - s2 * s2) + s1 * s2 * x2) / sb)
    g2 = alpha * (s2 - (x2 * (r * r - s1 * s1) + s1 * s2 * x1) / sb)
    return g1, g2


@dataclass(frozen=True)
class DynamicSet:
    """Velocity disk ``{f : |f - wind| <= speed}`` (m/s)."""

    wind: tuple[float, float]
    speed: float

    def __post_init__(self):
        w = as_vec(self.wind, "wind")
        object.__setattr__(self, "wind", (float(w[0]), float(w[1])))
        speed = float(self.speed)
        if not math.isfinite(speed) or speed <= 0.0:
            raise ValueError(f"speed must be positive and finite, got {self.speed}")
        object.__setattr__(self, "speed", speed)
        if speed - math.hypot(*self.wind) < ADMISSIBILITY_MARGIN:
            raise ValueError(
                f"wind speed exceeds vehicle speed: |wind| = {math.hypot(*self.wind):.6g}, "
                f"speed = {speed:.6g}"
            )

    @property
    def margin(self) -> float:
        """``speed - |wind|``, the slowest ground speed over all headings."""
        return self.speed - math.hypot(*self.wind)

    @property
    def lipschitz(self) -> float:
        """Lipschitz modulus of the gauge, ``1 / (speed - |wind|)``."""
        return 1.0 / self.margin

    def alpha(self) -> float:
        s1, s2 = self.wind
        return 1.0 / (s1 * s1 + s2 * s2 - self.speed**2)

    def beta(self, x) -> float:
        s1, s2 = self.wind
        r = self.speed
        x1, x2 = as_vec(x)
        return x1 * x1 * (r * r - s2 * s2) + x2 * x2 * (r * r - s1 * s1) + 2.0 * s1 * s2 * x1 * x2


def gauge_eval(F: DynamicSet, x) -> float:
    """Flight time along displacement ``x`` under dynamics ``F`` (seconds)."""
    x1, x2 = as_vec(x)
    return float(_gauge(F.wind[0], F.wind[1], F.speed, x1, x2))


def gauge_grad(F: DynamicSet, x) -> np.ndarray:
    """Gradient of :func:`gauge_eval` at ``x != 0``."""
    x1, x2 = as_vec(x)
    if x1 == 0.0 and x2 == 0.0:
        raise DomainError("gauge is not differentiable at the origin")
    return np.array(_gauge_grad(F.wind[0], F.wind[1], F.speed, x1, x2))


def negate(F: DynamicSet) -> DynamicSet:
    """The reflected set ``-F``: same speed, opposite wind."""
    return DynamicSet((-F.wind[0], -F.wind[1]), F.speed)


def support(F: DynamicSet, v) -> float:
    """Support function ``sup_{f in F} <v, f> = <v, wind> + speed |v|``."""
    v1, v2 = as_vec(v, "v")
    return float(v1 * F.wind[0] + v2 * F.wind[1] + F.speed * math.hypot(v1, v2))


def scale_dynamics(F: DynamicSet, lam: float) -> DynamicSet:
    """``F / lam``; its gauge is ``lam`` times the gauge of ``F``."""
    lam = float(lam)
    if not lam > 0.0 or not math.isfinite(lam):
        raise ValueError(f"scale factor must be positive, got {lam}")
    return DynamicSet((F.wind[0] / lam, F.wind[1] / lam), F.speed / lam)
