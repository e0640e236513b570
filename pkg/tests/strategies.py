"""Hypothesis strategies shared by the property tests."""

import math

import numpy as np
from hypothesis import strategies as st

from sftloc import Box, Direction, Disk, DynamicSet, Extremum, Problem, Term

coord = st.floats(-200, 200, allow_nan=False, allow_infinity=False)
vec = st.tuples(coord, coord)
nonzero_vec = vec.filter(lambda v: math.hypot(*v) > 1e-3)


@st.composite
def dynamics(draw):
    r = draw(st.floats(0.5, 3.0))
    frac = draw(st.floats(0.0, 0.95))
    ang = draw(st.floats(0.0, 2 * math.pi))
    return DynamicSet((frac * r * math.cos(ang), frac * r * math.sin(ang)), r)


@st.composite
def regions(draw):
    c = (draw(st.floats(-60, 60)), draw(st.floats(-60, 60)))
    if draw(st.booleans()):
        return Disk(c, draw(st.floats(1.0, 15.0)))
    return Box(c, (draw(st.floats(1.0, 15.0)), draw(st.floats(1.0, 15.0))))


@st.composite
def terms(draw):
    return Term(
        draw(dynamics()),
        draw(regions()),
        draw(st.sampled_from(list(Direction))),
        draw(st.sampled_from(list(Extremum))),
        weight=draw(st.floats(0.5, 2.0)),
    )


@st.composite
def problems(draw):
    n = draw(st.integers(1, 3))
    return Problem(tuple(tuple(draw(st.lists(terms(), min_size=1, max_size=3))) for _ in range(n)))


def random_dynamics(rng):
    r = rng.uniform(0.5, 3.0)
    frac, ang = rng.uniform(0, 0.95), rng.uniform(0, 2 * np.pi)
    return DynamicSet((frac * r * np.cos(ang), frac * r * np.sin(ang)), r)


def random_region(rng):
    c = rng.uniform(-60, 60, 2)
    if rng.random() < 0.5:
        return Disk(c, rng.uniform(1, 15))
    return Box(c, rng.uniform(1, 15, 2))
