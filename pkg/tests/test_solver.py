import numpy as np
import pytest

from sftloc import Box, Disk, DynamicSet, Problem, SolverConfig, Term, evaluate, subgradient
from sftloc import multistart_solve, robust_solve, solve, staged_solve
from sftloc.oracle import grid_min
from sftloc.scenario import build_problem, load_scenario
from sftloc.solver import default_config, default_start, default_step, default_starts

F0 = DynamicSet((0, 0), 1.0)
WIND_F = DynamicSet((-0.6, 0.6), 1.0)


@pytest.fixture(scope="module")
def info4():
    return build_problem(load_scenario("info4"))


def test_defaults(info4):
    assert default_start(info4) == pytest.approx(((30 + 210 + 550) / 3, (350 + 10 + 200) / 3))
    assert default_step(info4) == pytest.approx(0.1 * np.hypot(520, 340))
    assert len(default_starts(info4)) == 4


def test_best_value_is_monotone_and_matches_trace(info4):
    res = solve(info4, default_config(info4, max_iters=4000, record_trace=True))
    assert res.trace.shape == (4000, 4)
    assert res.best_value == res.trace[:, 3].min()
    assert res.best_value == pytest.approx(evaluate(info4, res.best_x).objective, rel=1e-12)


def test_solution_close_to_oracle(info4):
    res = robust_solve(info4)
    assert res.best_value <= grid_min(info4)[0] * (1 + 1e-3)


@pytest.mark.parametrize("constraint", [Box((300, 300), (20, 20)), Disk((0, 0), 50)])
def test_constrained_iterates_stay_feasible(info4, constraint):
    P = Problem(info4.groups, constraint=constraint)
    res = solve(P, default_config(P, max_iters=3000, record_trace=True))
    pts = res.trace[:, 1:3]
    if isinstance(constraint, Box):
        d = np.abs(pts - constraint.center) - np.array(constraint.half_extent)
        assert d.max() <= 1e-9
    else:
        assert np.hypot(*(pts - constraint.center).T).max() <= constraint.radius + 1e-9
    assert res.best_value == pytest.approx(grid_min(P)[0], rel=2e-3)


def test_start_at_optimum_stays_put():
    # a single target containing the start: objective is 0 there and the zero subgradient stops the run
    P = Problem.fermat_torricelli([Term(WIND_F, Disk((5, 5), 3))])
    res = solve(P, SolverConfig(x0=(5, 5), step_c=10))
    assert res.best_value == 0.0
    assert res.best_x == pytest.approx((5, 5))


def test_symmetric_problem_optimum():
    P = Problem.fermat_torricelli([Term(F0, Disk((-5, 0), 1)), Term(F0, Disk((5, 0), 1))])
    res = robust_solve(P, default_config(P, x0=(3, 40)))
    assert res.best_value == pytest.approx(8.0, abs=1e-6)


@pytest.mark.parametrize("start", [(1e4, 1e4), (-3000, 200), (0, 0)])
def test_far_starts_reach_the_same_value(info4, start):
    ref = robust_solve(info4).best_value
    res = robust_solve(info4, default_config(info4, x0=start))
    assert res.best_value == pytest.approx(ref, rel=1e-3)


def test_far_start_with_step_scaled_to_distance(info4):
    # c / k steps travel about c log K in total, so c must match the distance to cover
    start = np.array([1e4, 1e4])
    c = np.hypot(*(start - default_start(info4)))
    res = staged_solve(info4, default_config(info4, x0=tuple(start), step_c=c))
    assert res.best_value == pytest.approx(robust_solve(info4).best_value, rel=1e-3)


def test_subgradient_inequality_at_solution(info4, rng):
    res = robust_solve(info4)
    g = subgradient(info4, res.best_x)
    for x in rng.uniform(-200, 800, (200, 2)):
        assert evaluate(info4, x).objective >= res.best_value + g @ (x - res.best_x) - 1e-7 * res.best_value


def test_staged_trace_is_renumbered(info4):
    res = staged_solve(info4, default_config(info4, max_iters=500, record_trace=True), stages=(1.0, 0.1))
    assert res.iterations_run == 1000
    assert np.array_equal(res.trace[:, 0], np.arange(1, 1001))


def test_improvement_window_stops_early(info4):
    res = solve(info4, default_config(info4, max_iters=50_000, improvement_window=(500, 1e-6)))
    assert res.iterations_run < 50_000


@pytest.mark.parametrize(
    "kw",
    [dict(step_c=0), dict(step_c=float("inf")), dict(max_iters=0), dict(improvement_window=(0, 1e-3))],
)
def test_bad_config_rejected(kw):
    base = dict(x0=(0, 0), step_c=1.0)
    with pytest.raises(ValueError):
        SolverConfig(**{**base, **kw})


def test_bad_stages_rejected(info4):
    with pytest.raises(ValueError):
        staged_solve(info4, default_config(info4), stages=())
    with pytest.raises(ValueError):
        multistart_solve(info4, default_config(info4), [])
