"""Objective assembly for the SFT family and subgradient selection.

An objective is a maximum over groups of sums of gauge terms.  Each term is
a (dynamics, target, direction, extremum) tuple:

* ``FROM_TARGET`` terms measure flight from the target to the station and use
  the dynamics as given; ``TO_TARGET`` terms measure flight from the station
  to the target and use the reflected dynamics ``-F``.
* ``NEAREST`` terms use the nearest point of the target, ``FARTHEST`` terms the
  farthest one.

One group is the Fermat-Torricelli shape, all-singleton groups the Sylvester
shape, anything else the general SFT shape.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from numba import njit

from .gauge import DynamicSet, _gauge, _gauge_grad, as_vec, negate, scale_dynamics
from .projection import (
    ProjectionResult,
    _euclid_jacobian,
    _euclid_point,
    _farthest,
    _nearest,
    euclid_witness,
    msmg,
    set_gauge,
    shape_params,
)
from .sets import Box, ConstraintSet, Disk, ReferenceSet, WholePlane


class Direction(str, enum.Enum):
    TO_TARGET = "to"
    FROM_TARGET = "from"


class Extremum(str, enum.Enum):
    NEAREST = "nearest"
    FARTHEST = "farthest"


class WitnessRule(str, enum.Enum):
    """How the point of the target that a leg flies to/from is chosen.

    ``GENERALIZED`` takes the time-optimal point (the set-based gauge);
    ``EUCLIDEAN`` takes the Euclidean nearest/farthest point, the convention
    behind the published experiment tables.
    """

    GENERALIZED = "generalized"
    EUCLIDEAN = "euclidean"


@dataclass(frozen=True)
class Term:
    dynamics: DynamicSet
    target: ReferenceSet
    direction: Direction = Direction.FROM_TARGET
    extremum: Extremum = Extremum.NEAREST
    weight: float = 1.0
    witness: WitnessRule = WitnessRule.GENERALIZED

    def __post_init__(self):
        object.__setattr__(self, "direction", Direction(self.direction))
        object.__setattr__(self, "extremum", Extremum(self.extremum))
        object.__setattr__(self, "witness", WitnessRule(self.witness))
        if not float(self.weight) > 0:
            raise ValueError(f"weight must be positive, got {self.weight}")
        object.__setattr__(self, "weight", float(self.weight))

    @property
    def resolved(self) -> DynamicSet:
        """Dynamics actually fed to the gauge: reflected for outbound flight, weight folded in."""
        F = negate(self.dynamics) if self.direction is Direction.TO_TARGET else self.dynamics
        return F if self.weight == 1.0 else scale_dynamics(F, self.weight)

    def project(self, x) -> ProjectionResult:
        far = self.extremum is Extremum.FARTHEST
        if self.witness is WitnessRule.EUCLIDEAN:
            return euclid_witness(self.resolved, self.target, x, farthest=far)
        if not far:
            return set_gauge(self.resolved, self.target, x)
        return msmg(self.resolved, self.target, x)


@dataclass(frozen=True)
class Evaluation:
    objective: float
    group_values: list[float]
    active_group: int
    witnesses: list[list[ProjectionResult]]


@dataclass(frozen=True)
class Problem:
    groups: tuple[tuple[Term, ...], ...]
    constraint: ConstraintSet = field(default_factory=WholePlane)
    label: str = ""

    def __post_init__(self):
        groups = tuple(tuple(g) for g in self.groups)
        if not groups or any(len(g) == 0 for g in groups):
            raise ValueError("a problem needs at least one group and no empty groups")
        object.__setattr__(self, "groups", groups)
        table, gidx = _compile(groups)
        object.__setattr__(self, "_table", table)
        object.__setattr__(self, "_gidx", gidx)

    @classmethod
    def fermat_torricelli(cls, terms: Sequence[Term], **kw) -> "Problem":
        return cls((tuple(terms),), **kw)

    @classmethod
    def sylvester(cls, terms: Sequence[Term], **kw) -> "Problem":
        return cls(tuple((t,) for t in terms), **kw)

    @property
    def terms(self) -> list[Term]:
        return [t for g in self.groups for t in g]

    @property
    def variant(self) -> str:
        if len(self.groups) == 1:
            base = "FT"
        elif all(len(g) == 1 for g in self.groups):
            base = "Sylvester"
        else:
            base = "SFT"
        if any(t.extremum is Extremum.FARTHEST for t in self.terms):
            return "Extended" + base
        return base


def _compile(groups):
    rows, gidx = [], []
    for k, g in enumerate(groups):
        for t in g:
            F = t.resolved
            kind, c1, c2, a, b = shape_params(t.target)
            far = 1.0 if t.extremum is Extremum.FARTHEST else 0.0
            euc = 1.0 if t.witness is WitnessRule.EUCLIDEAN else 0.0
            rows.append((kind, c1, c2, a, b, F.wind[0], F.wind[1], F.speed, far, euc))
            gidx.append(k)
    return np.array(rows, dtype=float), np.array(gidx, dtype=np.int64)


def evaluate(P: Problem, x) -> Evaluation:
    x = as_vec(x)
    witnesses = [[t.project(x) for t in g] for g in P.groups]
    values = [float(sum(w.value for w in ws)) for ws in witnesses]
    active = int(np.argmax(values))
    return Evaluation(values[active], values, active, witnesses)


def term_subgradient(term: Term, x, proj: ProjectionResult | None = None) -> np.ndarray:
    """One subgradient of a single term at ``x``."""
    x = as_vec(x)
    proj = term.project(x) if proj is None else proj
    d = x - proj.witness
    if term.extremum is Extremum.NEAREST and not proj.at_boundary:
        return np.zeros(2)
    if d[0] == 0.0 and d[1] == 0.0:
        return np.zeros(2)
    F = term.resolved
    g1, g2 = _gauge_grad(F.wind[0], F.wind[1], F.speed, d[0], d[1])
    if term.witness is WitnessRule.EUCLIDEAN:
        # chain rule through the witness map x -> w(x)
        kind, c1, c2, a, b = shape_params(term.target)
        far = term.extremum is Extremum.FARTHEST
        j11, j12, j22 = _euclid_jacobian(kind, c1, c2, a, b, x[0], x[1], far)
        g1, g2 = j11 * g1 + j12 * g2, j12 * g1 + j22 * g2
    return np.array([g1, g2])


def subgradient(P: Problem, x) -> np.ndarray:
    """A subgradient of the objective: the summed term subgradients of the first active group."""
    x = as_vec(x)
    ev = evaluate(P, x)
    k = ev.active_group
    v = np.zeros(2)
    for t, w in zip(P.groups[k], ev.witnesses[k]):
        v += term_subgradient(t, x, w)
    return v


@njit(nogil=True)
def _objective_subgrad(table, gidx, ngroups, x1, x2):
    """Compiled twin of ``evaluate`` + ``subgradient``; returns (value, g1, g2, active)."""
    vals = np.zeros(ngroups)
    gx = np.zeros(ngroups)
    gy = np.zeros(ngroups)
    for i in range(table.shape[0]):
        kind = int(table[i, 0])
        c1, c2, a, b = table[i, 1], table[i, 2], table[i, 3], table[i, 4]
        s1, s2, r = table[i, 5], table[i, 6], table[i, 7]
        far = table[i, 8] > 0.5
        euc = table[i, 9] > 0.5
        if euc:
            w1, w2, inside = _euclid_point(kind, c1, c2, a, b, x1, x2, far)
            bd = not inside
            v = _gauge(s1, s2, r, x1 - w1, x2 - w2) if bd else 0.0
        elif far:
            v, w1, w2, bd = _farthest(kind, c1, c2, a, b, s1, s2, r, x1, x2)
        else:
            v, w1, w2, bd = _nearest(kind, c1, c2, a, b, s1, s2, r, x1, x2)
        k = gidx[i]
        vals[k] += v
        d1 = x1 - w1
        d2 = x2 - w2
        if bd and not (d1 == 0.0 and d2 == 0.0):
            g1, g2 = _gauge_grad(s1, s2, r, d1, d2)
            if euc:
                j11, j12, j22 = _euclid_jacobian(kind, c1, c2, a, b, x1, x2, far)
                g1, g2 = j11 * g1 + j12 * g2, j12 * g1 + j22 * g2
            gx[k] += g1
            gy[k] += g2
    best = 0
    for k in range(1, ngroups):
        if vals[k] > vals[best]:
            best = k
    return vals[best], gx[best], gy[best], best


def fast_eval(P: Problem, x) -> tuple[float, np.ndarray]:
    x1, x2 = as_vec(x)
    v, g1, g2, _ = _objective_subgrad(P._table, P._gidx, len(P.groups), x1, x2)
    return float(v), np.array([g1, g2])


@dataclass(frozen=True)
class UniquenessReport:
    bounded: bool
    strictly_convex_targets: bool
    strictly_convex_dynamics: bool
    notes: list[str]

    @property
    def guaranteed(self) -> bool:
        return self.bounded and self.strictly_convex_targets and self.strictly_convex_dynamics

    def __str__(self) -> str:
        yn = {True: "yes", False: "no"}
        lines = [
            f"bounded: {yn[self.bounded]}",
            f"strictly convex targets: {yn[self.strictly_convex_targets]}",
            f"strictly convex dynamics: {yn[self.strictly_convex_dynamics]}",
        ]
        return "\n".join(lines + self.notes)


def check_uniqueness_conditions(P: Problem) -> UniquenessReport:
    """Advisory check of the sufficient conditions for existence and uniqueness.

    The line-avoidance condition is not checked; only boundedness and strict
    convexity of the targets and dynamic sets are reported.
    """
    targets = [t.target for t in P.terms]
    # every target is compact, so the objective is coercive
    bounded = all(isinstance(o, (Box, Disk)) for o in targets) or not isinstance(
        P.constraint, WholePlane
    )
    strict_targets = all(o.strictly_convex for o in targets)
    notes = []
    if not strict_targets:
        notes.append("targets not strictly convex; uniqueness not guaranteed")
    if bounded:
        notes.append("an optimal solution exists")
    return UniquenessReport(bounded, strict_targets, True, notes)

