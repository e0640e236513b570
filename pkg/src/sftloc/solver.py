"""Projected subgradient descent with diminishing steps ``c / k``.

The loop keeps the best iterate seen so far, since subgradient steps are not
monotone.  It runs inside a compiled kernel; a solve is deterministic given
its problem and configuration.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from numba import njit

from .gauge import as_vec
from .problem import Problem, _objective_subgrad
from .sets import Box, Disk, WholePlane, euclid_project

log = logging.getLogger(__name__)

DEFAULT_ITERS = 50_000
SUBGRADIENT_ALARM = 1e6


@dataclass(frozen=True)
class SolverConfig:
    x0: tuple[float, float]
    step_c: float
    max_iters: int = DEFAULT_ITERS
    record_trace: bool = False
    # (window, min_rel_improve): stop once the best value improves by less
    # than min_rel_improve (relative) over the last `window` iterations
    improvement_window: Optional[tuple[int, float]] = None

    def __post_init__(self):
        x0 = as_vec(self.x0, "x0")
        object.__setattr__(self, "x0", (float(x0[0]), float(x0[1])))
        if not self.step_c > 0 or not math.isfinite(self.step_c):
            raise ValueError(f"step_c must be positive, got {self.step_c}")
        if int(self.max_iters) < 1:
            raise ValueError(f"max_iters must be positive, got {self.max_iters}")
        if self.improvement_window is not None:
            w, tol = self.improvement_window
            if int(w) < 1 or tol < 0:
                raise ValueError(f"bad improvement window {self.improvement_window}")


@dataclass
class SolveResult:
    best_x: np.ndarray
    best_value: float
    iterations_run: int
    final_x: np.ndarray
    trace: Optional[np.ndarray] = None  # rows of (iter, x1, x2, value)
    warnings: list[str] = field(default_factory=list)


def default_step(P: Problem) -> float:
    """0.1 times the diagonal of the bounding box of all target centers."""
    c = np.array([t.target.center for t in P.terms])
    diag = float(np.hypot(*(c.max(axis=0) - c.min(axis=0))))
    if diag == 0.0:
        diag = max(_extent(t.target) for t in P.terms)
    return 0.1 * diag


def _extent(omega) -> float:
    return max(omega.half_extent) if isinstance(omega, Box) else omega.radius


def default_start(P: Problem) -> tuple[float, float]:
    c = np.array([t.target.center for t in P.terms]).mean(axis=0)
    x0 = euclid_project(P.constraint, c)
    return float(x0[0]), float(x0[1])


def default_config(P: Problem, **overrides) -> SolverConfig:
    kw = dict(x0=default_start(P), step_c=default_step(P))
    kw.update({k: v for k, v in overrides.items() if v is not None})
    return SolverConfig(**kw)


def _constraint_params(C) -> tuple[int, float, float, float, float]:
    if isinstance(C, WholePlane):
        return 0, 0.0, 0.0, 0.0, 0.0
    if isinstance(C, Box):
        return 1, C.center[0], C.center[1], C.half_extent[0], C.half_extent[1]
    if isinstance(C, Disk):
        return 2, C.center[0], C.center[1], C.radius, C.radius
    raise TypeError(f"not a constraint set: {C!r}")


@njit(nogil=True)
def _project(ck, c1, c2, a, b, x1, x2):
    if ck == 1:
        return min(max(x1, c1 - a), c1 + a), min(max(x2, c2 - b), c2 + b)
    if ck == 2:
        d1, d2 = x1 - c1, x2 - c2
        n = math.hypot(d1, d2)
        if n > a:
            return c1 + d1 * a / n, c2 + d2 * a / n
    return x1, x2


@njit(nogil=True)
def _solve_kernel(table, gidx, ngroups, cons, x01, x02, step_c, K, record, window, min_rel, alarm):
    ck = int(cons[0])
    x1, x2 = _project(ck, cons[1], cons[2], cons[3], cons[4], x01, x02)
    best = np.inf
    bx1, bx2 = x1, x2
    best_hist = np.empty(K)
    trace = np.empty((K if record else 0, 4))
    n_alarm = 0
    k = 0
    while k < K:
        f, g1, g2, _ = _objective_subgrad(table, gidx, ngroups, x1, x2)
        if f < best:
            best = f
            bx1, bx2 = x1, x2
        best_hist[k] = best
        if record:
            trace[k, 0] = k + 1
            trace[k, 1] = x1
            trace[k, 2] = x2
            trace[k, 3] = f
        k += 1
        if math.hypot(g1, g2) > alarm:
            n_alarm += 1
        if g1 == 0.0 and g2 == 0.0:
            # zero subgradient certifies optimality
            break
        if window > 0 and k > window:
            prev = best_hist[k - 1 - window]
            if prev - best <= min_rel * abs(prev):
                break
        step = step_c / k
        x1, x2 = _project(ck, cons[1], cons[2], cons[3], cons[4], x1 - step * g1, x2 - step * g2)
    return bx1, bx2, best, k, x1, x2, trace[:k], best_hist[:k], n_alarm


def solve(P: Problem, cfg: SolverConfig) -> SolveResult:
    cons = np.array(_constraint_params(P.constraint), dtype=float)
    window, min_rel = (0, 0.0) if cfg.improvement_window is None else cfg.improvement_window
    out = _solve_kernel(
        P._table, P._gidx, len(P.groups), cons, cfg.x0[0], cfg.x0[1], float(cfg.step_c),
        int(cfg.max_iters), bool(cfg.record_trace), int(window), float(min_rel), SUBGRADIENT_ALARM,
    )
    bx1, bx2, best, k, fx1, fx2, trace, _, n_alarm = out
    warnings = []
    if n_alarm:
        msg = f"subgradient norm exceeded {SUBGRADIENT_ALARM:g} on {n_alarm} iterations"
        log.warning("%s (%s)", msg, P.label or "unnamed problem")
        warnings.append(msg)
    return SolveResult(
        best_x=np.array([bx1, bx2]),
        best_value=float(best),
        iterations_run=int(k),
        final_x=np.array([fx1, fx2]),
        trace=trace.copy() if cfg.record_trace else None,
        warnings=warnings,
    )


# step_c multipliers for successive restarts from the incumbent
DEFAULT_STAGES = (1.0, 0.1, 0.01, 0.001)


def _with(cfg: SolverConfig, x0, step_c) -> SolverConfig:
    return SolverConfig(
        x0=(float(x0[0]), float(x0[1])), step_c=step_c, max_iters=cfg.max_iters,
        record_trace=cfg.record_trace, improvement_window=cfg.improvement_window,
    )


def staged_solve(P: Problem, cfg: SolverConfig, stages: Sequence[float] = DEFAULT_STAGES) -> SolveResult:
    """Chain of solves, each restarted at the best point so far with ``step_c`` scaled down.

    With ``c / k`` steps the guaranteed progress decays only like ``1 / log K``, so
    zig-zagging along a kink of a max function can stall far from the minimum.
    Restarting with a smaller ``c`` from the incumbent resolves the valley cheaply.
    """
    if len(stages) == 0 or any(not f > 0 for f in stages):
        raise ValueError(f"stages must be a nonempty list of positive factors, got {stages}")
    best, total, warns, traces = None, 0, [], []
    x0 = cfg.x0
    for f in stages:
        res = solve(P, _with(cfg, x0, cfg.step_c * f))
        total += res.iterations_run
        warns += [w for w in res.warnings if w not in warns]
        if res.trace is not None:
            traces.append(res.trace)
        if best is None or res.best_value < best.best_value:
            best = res
        x0 = best.best_x
    trace = None
    if traces:
        trace = np.vstack(traces)
        trace[:, 0] = np.arange(1, len(trace) + 1)
    return SolveResult(best.best_x, best.best_value, total, res.final_x, trace, warns)


def multistart_solve(
    P: Problem, cfg: SolverConfig, starts: Sequence, stages: Sequence[float] = (1.0,)
) -> SolveResult:
    """Best of :func:`staged_solve` over several starting points (duplicates skipped)."""
    if len(starts) == 0:
        raise ValueError("starts must be nonempty")
    best, seen = None, set()
    for x0 in starts:
        x0 = as_vec(x0, "start")
        key = (float(x0[0]), float(x0[1]))
        if key in seen:
            continue
        seen.add(key)
        res = staged_solve(P, _with(cfg, key, cfg.step_c), stages)
        if best is None or res.best_value < best.best_value:
            best = res
    return best


def default_starts(P: Problem) -> list[tuple[float, float]]:
    """The default start followed by every target center, projected onto the constraint."""
    starts = [default_start(P)]
    for t in P.terms:
        c = euclid_project(P.constraint, t.target.center)
        starts.append((float(c[0]), float(c[1])))
    return starts


def robust_solve(P: Problem, cfg: Optional[SolverConfig] = None) -> SolveResult:
    """Staged multistart from :func:`default_starts`; what the experiment harness uses."""
    cfg = default_config(P) if cfg is None else cfg
    return multistart_solve(P, cfg, [cfg.x0] + default_starts(P)[1:], DEFAULT_STAGES)
