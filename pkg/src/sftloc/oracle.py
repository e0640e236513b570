"""Brute-force reference evaluators.

Nothing here reuses the boundary searches of :mod:`sftloc.projection`.  Term
values are recomputed from the reachability characterisation
``rho_F^Omega(x) = min{t >= 0 : x in Omega + t F}``:

* disk target, nearest: ``|x - c - t s| <= R + t r``, a quadratic in ``t``;
* disk target, farthest: the whole disk must fit in ``x - t F``, i.e.
  ``|x - c - t s| + R <= t r``, again a quadratic;
* box target, nearest: ``x - c - t s`` must enter the box grown by ``t r``,
  whose pieces (two slabs, four corner disks) each have a closed-form entry
  time;
* box target, farthest: the worst corner.

Everything is vectorised over arrays of query points so a full grid can be
scored in one pass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .gauge import DynamicSet, as_vec, gauge_eval
from .problem import Extremum, Problem, Term, WitnessRule
from .sets import Box, Disk, ReferenceSet, WholePlane

_GOLD = (math.sqrt(5.0) - 1.0) / 2.0


def gauge_bisect(F: DynamicSet, x, tol: float = 1e-12) -> float:
    """Gauge by bisection on ``t`` over the membership test ``|x/t - s| <= r``."""
    x = as_vec(x)
    if not x.any():
        return 0.0
    s = np.array(F.wind)

    def inside(t):
        return np.hypot(*(x / t - s)) <= F.speed

    hi = 1.0
    while not inside(hi):
        hi *= 2.0
    lo = 0.0
    while hi - lo > tol * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if inside(mid):
            hi = mid
        else:
            lo = mid
    return hi


def _larger_root(a, b, c):
    disc = np.maximum(b * b - 4.0 * a * c, 0.0)
    q = -0.5 * (b + np.where(b >= 0.0, 1.0, -1.0) * np.sqrt(disc))
    with np.errstate(divide="ignore", invalid="ignore"):
        r1 = q / a
        r2 = np.where(q != 0.0, c / q, -np.inf)
    return np.maximum(r1, r2)


def _disk_reach(s, r, D, R, far):
    """Smallest t with |D - t s| <= R + t r (nearest) or |D - t s| + R <= t r (farthest)."""
    s1, s2 = s
    sig = -1.0 if far else 1.0
    a = s1 * s1 + s2 * s2 - r * r
    b = -2.0 * (D[..., 0] * s1 + D[..., 1] * s2 + sig * R * r)
    c = D[..., 0] ** 2 + D[..., 1] ** 2 - R * R
    t = np.maximum(_larger_root(a, b, c), 0.0)
    if not far:
        t = np.where(c <= 0.0, 0.0, t)
    return t


def _slab_entry(s_par, s_perp, r, D_par, D_perp, h_par, h_perp):
    """First t with |D_par - t s_par| <= h_par + t r and |D_perp - t s_perp| <= h_perp."""
    t = np.maximum.reduce([
        np.zeros_like(D_par),
        (D_par - h_par) / (r + s_par),
        (-D_par - h_par) / (r - s_par),
    ])
    if s_perp == 0.0:
        ok = np.abs(D_perp) <= h_perp
        return np.where(ok, t, np.inf)
    lo = (D_perp - np.sign(s_perp) * h_perp) / s_perp
    hi = (D_perp + np.sign(s_perp) * h_perp) / s_perp
    t = np.maximum(t, lo)
    return np.where(t <= hi, t, np.inf)


def _box_reach(s, r, D, h):
    """First t with D - t s in box + t B(0, r): the minimum entry time over the two
    slabs (box widened along one axis) and the four corner disks."""
    s1, s2 = s
    h1, h2 = h
    D1, D2 = D[..., 0], D[..., 1]
    cands = [
        _slab_entry(s1, s2, r, D1, D2, h1, h2),
        _slab_entry(s2, s1, r, D2, D1, h2, h1),
    ]
    for v in ((-h1, -h2), (h1, -h2), (-h1, h2), (h1, h2)):
        cands.append(_disk_reach(s, r, D - np.array(v), 0.0, far=False))
    inside = (np.abs(D1) <= h1) & (np.abs(D2) <= h2)
    return np.where(inside, 0.0, np.min(cands, axis=0))


def _box_corners(omega: Box):
    (c1, c2), (h1, h2) = omega.center, omega.half_extent
    return np.array([[c1 - h1, c2 - h2], [c1 + h1, c2 - h2], [c1 - h1, c2 + h2], [c1 + h1, c2 + h2]])


def _euclid_values(F: DynamicSet, omega: ReferenceSet, X, far):
    s, r = F.wind, F.speed
    c = np.array(omega.center)
    if isinstance(omega, Box):
        if far:
            corners = _box_corners(omega)
            dist = np.stack([np.hypot(*(X - v).T) for v in corners], axis=-1)
            W = corners[np.argmax(dist, axis=-1)]
        else:
            h = np.array(omega.half_extent)
            W = np.clip(X, c - h, c + h)
    else:
        D = X - c
        n = np.hypot(D[..., 0], D[..., 1])[..., None]
        with np.errstate(invalid="ignore", divide="ignore"):
            U = np.where(n > 0, D / n, np.array([1.0, 0.0]))
        if far:
            W = c - omega.radius * U
        else:
            W = np.where(n <= omega.radius, X, c + omega.radius * U)
    return _disk_reach(s, r, X - W, 0.0, far=False)


def term_values(term: Term, X) -> np.ndarray:
    """Value of one term at every point of ``X`` (shape ``(..., 2)``)."""
    X = np.asarray(X, dtype=float)
    F = term.resolved
    far = term.extremum is Extremum.FARTHEST
    omega = term.target
    if term.witness is WitnessRule.EUCLIDEAN:
        return _euclid_values(F, omega, X, far)
    D = X - np.array(omega.center)
    if isinstance(omega, Disk):
        return _disk_reach(F.wind, F.speed, D, omega.radius, far)
    if far:
        return np.max(
            [_disk_reach(F.wind, F.speed, X - v, 0.0, far=False) for v in _box_corners(omega)], axis=0
        )
    return _box_reach(F.wind, F.speed, D, omega.half_extent)


def objective_values(P: Problem, X) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    groups = [sum(term_values(t, X) for t in g) for g in P.groups]
    return np.max(groups, axis=0)


@dataclass(frozen=True)
class GridSpec:
    lo: tuple[float, float]
    hi: tuple[float, float]
    coarse_n: int = 400
    refine_rounds: int = 3

    def __post_init__(self):
        if not (self.lo[0] < self.hi[0] and self.lo[1] < self.hi[1]):
            raise ValueError(f"grid needs lo < hi componentwise, got {self.lo}, {self.hi}")
        if self.coarse_n < 2 or self.refine_rounds < 0:
            raise ValueError("coarse_n must be >= 2 and refine_rounds >= 0")


def auto_grid(P: Problem, coarse_n: int = 400, refine_rounds: int = 3, inflate: float = 0.5) -> GridSpec:
    """Bounding box of all target sets, each side pushed out by ``inflate`` times its extent."""
    lo = np.array([np.inf, np.inf])
    hi = -lo
    for t in P.terms:
        o = t.target
        h = np.array(o.half_extent) if isinstance(o, Box) else np.array([o.radius, o.radius])
        lo = np.minimum(lo, np.array(o.center) - h)
        hi = np.maximum(hi, np.array(o.center) + h)
    pad = inflate * (hi - lo)
    return GridSpec(tuple(lo - pad), tuple(hi + pad), coarse_n, refine_rounds)


def _feasible(C, X):
    if isinstance(C, WholePlane):
        return np.ones(X.shape[:-1], dtype=bool)
    D = X - np.array(C.center)
    if isinstance(C, Box):
        return np.all(np.abs(D) <= np.array(C.half_extent) + 1e-12, axis=-1)
    return np.hypot(D[..., 0], D[..., 1]) <= C.radius + 1e-12


def grid_search(P: Problem, g: Optional[GridSpec] = None) -> list[tuple[float, np.ndarray]]:
    """Incumbent (value, point) after the coarse pass and after each zoom round."""
    g = auto_grid(P) if g is None else g
    lo, hi = np.array(g.lo, float), np.array(g.hi, float)
    best_v, best_x = np.inf, None
    history = []
    for _ in range(g.refine_rounds + 1):
        xs = np.linspace(lo[0], hi[0], g.coarse_n)
        ys = np.linspace(lo[1], hi[1], g.coarse_n)
        X = np.stack(np.meshgrid(xs, ys, indexing="ij"), axis=-1)
        V = np.where(_feasible(P.constraint, X), objective_values(P, X), np.inf)
        i = np.unravel_index(np.argmin(V), V.shape)  # first minimum in index order
        if V[i] < best_v:
            best_v, best_x = float(V[i]), X[i].copy()
        history.append((best_v, best_x.copy()))
        half = (hi - lo) / 20.0
        lo, hi = best_x - half, best_x + half
    return history


def grid_min(P: Problem, g: Optional[GridSpec] = None) -> tuple[float, np.ndarray]:
    """Minimum of the objective over a refined grid."""
    return grid_search(P, g)[-1]


def _boundary_points(omega: ReferenceSet, U):
    """Vectorised boundary loop at parameters ``U`` in [0, 1)."""
    c = np.array(omega.center)
    if isinstance(omega, Disk):
        th = 2.0 * np.pi * U
        return c + omega.radius * np.stack([np.cos(th), np.sin(th)], axis=-1)
    h1, h2 = omega.half_extent
    w, h = 2 * h1, 2 * h2
    S = np.mod(U, 1.0) * 2 * (w + h)
    P = np.empty(U.shape + (2,))
    e1, e2, e3 = w, w + h, 2 * w + h
    m = S < e1
    P[m] = np.stack([S[m], np.zeros(m.sum())], -1)
    m = (S >= e1) & (S < e2)
    P[m] = np.stack([np.full(m.sum(), w), S[m] - e1], -1)
    m = (S >= e2) & (S < e3)
    P[m] = np.stack([w - (S[m] - e2), np.full(m.sum(), h)], -1)
    m = S >= e3
    P[m] = np.stack([np.zeros(m.sum()), h - (S[m] - e3)], -1)
    return P + c - np.array([h1, h2])


def sample_boundary_extremum(F: DynamicSet, omega: ReferenceSet, x, mode: str = "min", n: int = 4096) -> float:
    """Extremum of ``rho_F(x - w)`` over ``n`` boundary samples, polished by golden section.

    Only meaningful for ``mode="min"`` when ``x`` lies outside ``omega``.
    """
    if n < 1024:
        raise ValueError("n must be at least 1024")
    if mode not in ("min", "max"):
        raise ValueError(f"mode must be 'min' or 'max', got {mode!r}")
    x = as_vec(x)
    sign = 1.0 if mode == "min" else -1.0
    U = np.arange(n) / n
    W = _boundary_points(omega, U)
    vals = sign * _disk_reach(F.wind, F.speed, x - W, 0.0, far=False)
    k = int(np.argmin(vals))

    def f(u):
        w = _boundary_points(omega, np.array([u]))[0]
        return sign * gauge_eval(F, x - w)

    a, b = (k - 1) / n, (k + 1) / n
    c, d = b - _GOLD * (b - a), a + _GOLD * (b - a)
    fc, fd = f(c), f(d)
    while b - a > 1e-13:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _GOLD * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLD * (b - a)
            fd = f(d)
    return sign * min(vals[k], f(0.5 * (a + b)))
