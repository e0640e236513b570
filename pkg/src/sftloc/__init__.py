"""Single-facility siting under wind-shifted vehicle dynamics.

The objective family is the max over groups of summed set-based Minkowski
gauges (Sylvester, Fermat-Torricelli and mixed shapes), optionally with
farthest-point terms.  Solved by projected subgradient descent and checked
against brute-force oracles.
"""

from .gauge import DomainError, DynamicSet, gauge_eval, gauge_grad, negate, scale_dynamics, support
from .problem import (
    Direction,
    Evaluation,
    Extremum,
    Problem,
    Term,
    WitnessRule,
    check_uniqueness_conditions,
    evaluate,
    subgradient,
)
from .projection import ProjectionResult, euclid_witness, msmg, r_enlargement_contains, set_gauge
from .sets import Box, Disk, WholePlane, boundary_point, contains, euclid_project, normal_cone_contains, vertices
from .solver import SolveResult, SolverConfig, multistart_solve, robust_solve, solve, staged_solve

__version__ = "0.1.0"

__all__ = [
    "Box", "Direction", "Disk", "DomainError", "DynamicSet", "Evaluation", "Extremum", "Problem",
    "ProjectionResult", "SolveResult", "SolverConfig", "Term", "WholePlane", "WitnessRule",
    "boundary_point", "check_uniqueness_conditions", "contains", "euclid_project", "euclid_witness",
    "evaluate", "gauge_eval", "gauge_grad", "msmg", "multistart_solve", "negate", "normal_cone_contains",
    "r_enlargement_contains", "robust_solve", "scale_dynamics", "set_gauge", "solve", "staged_solve",
    "subgradient", "support", "vertices",
]
