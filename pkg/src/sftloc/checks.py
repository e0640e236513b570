"""A quick, self-contained sweep of the core invariants, for ``sftloc check``.

The pytest suite is the thorough version; this runs in a few seconds from an
installed package and needs no test files.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from .gauge import DynamicSet, gauge_eval, gauge_grad, negate, scale_dynamics, support
from .oracle import gauge_bisect, sample_boundary_extremum
from .problem import Problem, Term, evaluate, subgradient
from .projection import msmg, set_gauge
from .scenario import build_problem, load_scenario
from .sets import Box, Disk
from .solver import default_config, solve


def _rand_F(rng):
    r = rng.uniform(0.5, 3.0)
    ang, mag = rng.uniform(0, 2 * np.pi), rng.uniform(0, 0.9) * r
    return DynamicSet((mag * np.cos(ang), mag * np.sin(ang)), r)


def _rand_set(rng):
    c = rng.uniform(-50, 50, 2)
    if rng.random() < 0.5:
        return Disk(c, rng.uniform(1, 10))
    return Box(c, rng.uniform(1, 10, 2))


def _gauge_props(rng, n):
    for _ in range(n):
        F = _rand_F(rng)
        x, y = rng.normal(0, 50, 2), rng.normal(0, 50, 2)
        gx = gauge_eval(F, x)
        assert abs(gauge_eval(F, 3.7 * x) - 3.7 * gx) <= 1e-10 * max(1.0, gx), "homogeneity"
        assert gauge_eval(F, x + y) <= gx + gauge_eval(F, y) + 1e-10, "subadditivity"
        g = gauge_grad(F, x)
        assert abs(g @ x - gx) <= 1e-8 * max(1.0, gx), "Euler relation"
        assert abs(support(F, g) - 1.0) <= 1e-9, "unit support"
        assert abs(gauge_eval(negate(F), -x) - gx) <= 1e-9 * max(1.0, gx), "negation"
        assert abs(gauge_eval(F, x) - gauge_bisect(F, x)) <= 1e-8 * max(1.0, gx), "bisection oracle"
        h = 1e-6
        fd = [(gauge_eval(F, x + h * e) - gauge_eval(F, x - h * e)) / (2 * h) for e in np.eye(2)]
        assert np.max(np.abs(g - fd)) <= 1e-5, "finite differences"


def _projection_props(rng, n):
    for _ in range(n):
        F, om = _rand_F(rng), _rand_set(rng)
        x = rng.uniform(-120, 120, 2)
        near = set_gauge(F, om, x).value
        far = msmg(F, om, x).value
        if near > 0:
            ref = sample_boundary_extremum(F, om, x, "min")
            assert abs(near - ref) <= 1e-6 * max(1.0, ref), "nearest vs sampling oracle"
        ref = sample_boundary_extremum(F, om, x, "max")
        assert abs(far - ref) <= 1e-6 * max(1.0, ref), "farthest vs sampling oracle"
        lam = rng.uniform(0.2, 5)
        assert abs(set_gauge(scale_dynamics(F, lam), om, x).value - lam * near) <= 1e-8 * max(1.0, near), "scaling"
        d = rng.normal(0, 30, 2)
        assert abs(set_gauge(F, om.translate(d), x + d).value - near) <= 1e-9 * max(1.0, near) + 1e-9, "translation"


def _subgradient_props(rng, n):
    for _ in range(n):
        groups = tuple(
            tuple(Term(_rand_F(rng), _rand_set(rng), rng.choice(["to", "from"]), rng.choice(["nearest", "farthest"]))
                  for _ in range(rng.integers(1, 3)))
            for _ in range(rng.integers(1, 4))
        )
        P = Problem(groups)
        xb, x = rng.uniform(-100, 100, 2), rng.uniform(-100, 100, 2)
        v = subgradient(P, xb)
        lhs = evaluate(P, x).objective
        rhs = evaluate(P, xb).objective + v @ (x - xb)
        assert lhs >= rhs - 1e-7 * max(1.0, abs(lhs)), "subgradient inequality"


def _solver_props(rng, n):
    P = build_problem(load_scenario("info4"))
    res = solve(P, default_config(P, max_iters=5000, record_trace=True))
    vals = res.trace[:, 3]
    assert np.all(np.diff(np.minimum.accumulate(vals)) <= 0), "best-value monotonicity"
    assert res.best_value == vals.min(), "best iterate is the minimum of the trace"


CHECKS: dict[str, Callable] = {
    "gauge": _gauge_props,
    "projection": _projection_props,
    "subgradient": _subgradient_props,
    "solver": _solver_props,
}


def run_checks(n: int = 100, seed: int = 0) -> list[tuple[str, bool, str]]:
    """Run each check group; returns (name, passed, detail)."""
    results = []
    for name, fn in CHECKS.items():
        rng = np.random.default_rng(seed)
        try:
            fn(rng, n)
            results.append((name, True, ""))
        except AssertionError as exc:
            results.append((name, False, str(exc)))
    return results
