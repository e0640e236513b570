import math
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sftloc import Box, Direction, Disk, DynamicSet, Extremum, Problem, Term, WitnessRule
from sftloc import check_uniqueness_conditions, evaluate, subgradient, support
from sftloc.problem import fast_eval, term_subgradient
from sftloc.scenario import build_problem, load_scenario

from strategies import problems, random_dynamics, random_region, terms, vec

WIND_F = DynamicSet((-0.6, 0.6), 1.0)


def trunc2(v):
    return math.trunc(v * 100) / 100


def worked_example_problem():
    s = load_scenario("info1")
    return build_problem(replace(s, convention="exact"))


# (direction, witness, subgradient truncated to two decimals) at x = (100, 100)
WORKED = [
    ("from", (45, 335), (4.12, -4.95)),
    ("to", (15, 335), (-0.01, -0.62)),
    ("from", (195, 25), (-0.46, 0.29)),
    ("to", (195, 25), (-4.74, 4.58)),
    ("from", (535, 185), (-0.66, -0.98)),
    ("to", (535, 215), (-4.91, 3.11)),
]


def test_worked_example_terms():
    P = worked_example_problem()
    assert P.variant == "FT"
    x = np.array([100.0, 100.0])
    for term, (direction, w, g) in zip(P.terms, WORKED):
        assert term.direction.value == direction
        r = term.project(x)
        assert r.witness == pytest.approx(w, abs=1e-6)
        assert tuple(trunc2(c) for c in term_subgradient(term, x, r)) == g


def test_worked_example_total():
    P = worked_example_problem()
    v = subgradient(P, (100, 100))
    assert v == pytest.approx((-6.67394189, 1.41445801), abs=1e-7)
    # the published total is the sum of the truncated components
    parts = np.array([g for *_, g in WORKED])
    assert tuple(np.round(parts.sum(axis=0), 2)) == (-6.66, 1.43)


def test_fast_eval_matches_evaluate():
    P = worked_example_problem()
    for x in [(100, 100), (250, 120), (30, 350), (-50, 600)]:
        v, g = fast_eval(P, x)
        assert v == pytest.approx(evaluate(P, x).objective, rel=1e-12)
        assert g == pytest.approx(subgradient(P, x), abs=1e-12)


def test_subgradient_inequality_500_draws(rng):
    worst = 0.0
    for _ in range(500):
        groups = tuple(
            tuple(
                Term(random_dynamics(rng), random_region(rng), list(Direction)[rng.integers(2)], list(Extremum)[rng.integers(2)])
                for _ in range(rng.integers(1, 4))
            )
            for _ in range(rng.integers(1, 4))
        )
        P = Problem(groups)
        xb, x = rng.uniform(-120, 120, 2), rng.uniform(-120, 120, 2)
        lhs = evaluate(P, x).objective
        rhs = evaluate(P, xb).objective + subgradient(P, xb) @ (x - xb)
        worst = max(worst, (rhs - lhs) / max(1.0, abs(lhs)))
    assert worst <= 1e-7


@given(problems(), vec, vec, st.floats(0, 1))
def test_convexity(P, x, y, lam):
    x, y = np.array(x), np.array(y)
    m = evaluate(P, lam * x + (1 - lam) * y).objective
    bound = lam * evaluate(P, x).objective + (1 - lam) * evaluate(P, y).objective
    assert m <= bound + 1e-7 * max(1.0, bound)


@given(terms(), st.floats(0.1, 10), vec)
def test_weighted_term_scales(t, w, x):
    heavy = Term(t.dynamics, t.target, t.direction, t.extremum, weight=t.weight * w)
    assert heavy.project(x).value == pytest.approx(w * t.project(x).value, rel=1e-9, abs=1e-9)


@given(terms(), vec)
def test_single_term_variants_collapse(t, x):
    ft = Problem.fermat_torricelli([t])
    sy = Problem.sylvester([t])
    assert evaluate(ft, x).objective == evaluate(sy, x).objective
    assert np.array_equal(subgradient(ft, x), subgradient(sy, x))


@given(terms(), vec)
def test_exterior_nearest_subgradient_has_unit_support(t, x):
    t = Term(t.dynamics, t.target, t.direction, Extremum.NEAREST, t.weight)
    r = t.project(x)
    if not r.at_boundary or np.allclose(r.witness, x):
        return
    g = term_subgradient(t, x, r)
    assert support(t.resolved, g) == pytest.approx(1.0, abs=1e-7)


def test_active_group_is_the_max():
    a = Term(WIND_F, Disk((0, 0), 1))
    b = Term(WIND_F, Disk((100, 0), 1))
    ev = evaluate(Problem.sylvester([a, b]), (10, 0))
    assert ev.active_group == 1
    assert ev.objective == max(ev.group_values)


def test_interior_nearest_term_is_flat():
    t = Term(WIND_F, Box((0, 0), (5, 5)))
    assert t.project((1, 1)).value == 0.0
    assert np.array_equal(term_subgradient(t, (1, 1)), np.zeros(2))


def test_euclidean_witness_rule():
    t = Term(WIND_F, Box.from_max_norm(30, 350, 15), witness=WitnessRule.EUCLIDEAN)
    r = t.project((100, 100))
    assert r.witness == pytest.approx((45, 335))


@pytest.mark.parametrize(
    "group,extremum,expected",
    [
        ([1], Extremum.NEAREST, "FT"),
        ([1, 1, 1], Extremum.NEAREST, "Sylvester"),
        ([2, 1], Extremum.NEAREST, "SFT"),
        ([3], Extremum.FARTHEST, "ExtendedFT"),
        ([2, 2], Extremum.FARTHEST, "ExtendedSFT"),
    ],
)
def test_variant_names(group, extremum, expected):
    t = Term(WIND_F, Disk((0, 0), 1), extremum=extremum)
    assert Problem(tuple(tuple([t] * n) for n in group)).variant == expected


def test_empty_groups_rejected():
    with pytest.raises(ValueError):
        Problem(())
    with pytest.raises(ValueError):
        Problem(((),))


def test_nonpositive_weight_rejected():
    with pytest.raises(ValueError):
        Term(WIND_F, Disk((0, 0), 1), weight=0)


def test_uniqueness_report_boxes_vs_disks():
    boxes = check_uniqueness_conditions(build_problem(load_scenario("info1")))
    disks = check_uniqueness_conditions(build_problem(load_scenario("info4")))
    assert boxes.bounded and disks.bounded
    assert not boxes.strictly_convex_targets and not boxes.guaranteed
    assert disks.strictly_convex_targets and disks.guaranteed
    assert "uniqueness not guaranteed" in str(boxes)
