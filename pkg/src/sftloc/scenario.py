"""Scenario files: target geometry, vehicle speeds, wind and variant.

Scenarios are YAML documents::

    name: info4
    variant: Sylvester          # FT | Sylvester | SFT | ExtendedFT | ExtendedSylvester | ExtendedSFT
    wind: [-0.6, 0.6]
    convention: exact           # exact | published
    constraint: plane           # or a shape mapping like a target, without speed
    targets:
      - {shape: disk, center: [30, 350], size: 10, speed: 2}
      - {shape: box, center: [210, 10], size: 15, speed: 1}   # size = half extent
    solver: {step_c: 50, max_iters: 50000, x0: [100, 100]}    # optional

Table sets list cases that share a variant and convention::

    name: table2
    variant: Sylvester
    convention: published
    cases:
      - {id: "1", scenario: info4, wind: [-0.7, 0.7]}

The ``published`` convention scores each leg at the Euclidean nearest or
farthest point of the target, and lets extended variants fly out to the
nearest point and home from the farthest one with the dynamics as given.  It
is the scoring behind the published experiment tables; ``exact`` is the
model with time-optimal witnesses.
"""

from __future__ import annotations

import math
import os
import tempfile
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path
from typing import Any, Optional, Union

import yaml

from .gauge import DynamicSet, as_vec
from .problem import Direction, Extremum, Problem, Term, WitnessRule
from .sets import Box, ConstraintSet, Disk, ReferenceSet, WholePlane

VARIANTS = ("FT", "Sylvester", "SFT", "ExtendedFT", "ExtendedSylvester", "ExtendedSFT")
CONVENTIONS = ("exact", "published")
_SOLVER_KEYS = ("x0", "step_c", "max_iters", "improvement_window")


class ScenarioError(ValueError):
    """Malformed or invalid scenario; the message names the offending field."""


@dataclass(frozen=True)
class Target:
    region: ReferenceSet
    speed: float


@dataclass(frozen=True)
class Scenario:
    name: str
    targets: tuple[Target, ...]
    wind: tuple[float, float] = (0.0, 0.0)
    variant: str = "Sylvester"
    constraint: ConstraintSet = field(default_factory=WholePlane)
    solver: tuple[tuple[str, Any], ...] = ()
    convention: str = "exact"

    def __post_init__(self):
        if not self.targets:
            raise ScenarioError("targets: at least one target is required")
        if self.variant not in VARIANTS:
            raise ScenarioError(f"variant: unknown {self.variant!r}, expected one of {', '.join(VARIANTS)}")
        if self.convention not in CONVENTIONS:
            raise ScenarioError(f"convention: unknown {self.convention!r}, expected exact or published")
        w = _vec(self.wind, "wind")
        object.__setattr__(self, "wind", w)
        for i, t in enumerate(self.targets):
            _check_speed(w, t.speed, f"targets[{i}]")
        object.__setattr__(self, "targets", tuple(self.targets))
        object.__setattr__(self, "solver", tuple(sorted(dict(self.solver).items())))

    @property
    def solver_overrides(self) -> dict:
        return dict(self.solver)

    def with_wind(self, wind) -> "Scenario":
        return replace(self, wind=_vec(wind, "wind"))


def _vec(v, where) -> tuple[float, float]:
    try:
        a = as_vec(v, where)
    except (ValueError, TypeError) as exc:
        raise ScenarioError(f"{where}: {exc}") from None
    return (float(a[0]), float(a[1]))


def _check_speed(wind, speed, where):
    if not isinstance(speed, (int, float)) or not speed > 0:
        raise ScenarioError(f"{where}.speed: must be a positive number, got {speed!r}")
    if math.hypot(*wind) >= speed - 1e-9:
        raise ScenarioError(
            f"{where}.speed: wind speed exceeds vehicle speed (|wind| = {math.hypot(*wind):g}, speed = {speed:g})"
        )


def _shape_from(d, where) -> ReferenceSet:
    if not isinstance(d, dict):
        raise ScenarioError(f"{where}: expected a mapping, got {type(d).__name__}")
    for key in ("shape", "center", "size"):
        if key not in d:
            raise ScenarioError(f"{where}: missing field {key!r}")
    center = _vec(d["center"], f"{where}.center")
    size = d["size"]
    try:
        if d["shape"] == "disk":
            return Disk(center, float(size))
        if d["shape"] == "box":
            half = (size, size) if isinstance(size, (int, float)) else size
            return Box(center, _vec(half, f"{where}.size"))
    except (ValueError, TypeError) as exc:
        raise ScenarioError(f"{where}.size: {exc}") from None
    raise ScenarioError(f"{where}.shape: expected 'box' or 'disk', got {d['shape']!r}")


def _shape_to(o: ReferenceSet) -> dict:
    if isinstance(o, Disk):
        return {"shape": "disk", "center": list(o.center), "size": o.radius}
    h = o.half_extent
    return {"shape": "box", "center": list(o.center), "size": h[0] if h[0] == h[1] else list(h)}


def scenario_from_dict(d: dict, source: str = "<scenario>") -> Scenario:
    if not isinstance(d, dict):
        raise ScenarioError(f"{source}: top level must be a mapping")
    unknown = set(d) - {"name", "wind", "variant", "targets", "constraint", "solver", "convention"}
    if unknown:
        raise ScenarioError(f"{source}: unknown field(s) {', '.join(sorted(unknown))}")
    raw = d.get("targets") or []
    if not isinstance(raw, list) or not raw:
        raise ScenarioError(f"{source}: targets: at least one target is required")
    wind = _vec(d.get("wind", (0.0, 0.0)), "wind")
    targets = []
    for i, t in enumerate(raw):
        region = _shape_from(t, f"targets[{i}]")
        if "speed" not in t:
            raise ScenarioError(f"targets[{i}]: missing field 'speed'")
        _check_speed(wind, t["speed"], f"targets[{i}]")
        targets.append(Target(region, float(t["speed"])))
    cons = d.get("constraint", "plane")
    constraint = WholePlane() if cons in (None, "plane") else _shape_from(cons, "constraint")
    solver = d.get("solver") or {}
    if not isinstance(solver, dict) or set(solver) - set(_SOLVER_KEYS):
        raise ScenarioError(f"solver: expected a mapping with keys among {', '.join(_SOLVER_KEYS)}")
    solver = {k: tuple(v) if isinstance(v, list) else v for k, v in solver.items()}
    return Scenario(
        name=str(d.get("name", Path(source).stem)),
        targets=tuple(targets),
        wind=wind,
        variant=d.get("variant", "Sylvester"),
        constraint=constraint,
        solver=tuple(solver.items()),
        convention=d.get("convention", "exact"),
    )


def scenario_to_dict(s: Scenario) -> dict:
    d = {
        "name": s.name,
        "variant": s.variant,
        "wind": list(s.wind),
        "convention": s.convention,
        "constraint": "plane" if isinstance(s.constraint, WholePlane) else _shape_to(s.constraint),
        "targets": [dict(_shape_to(t.region), speed=t.speed) for t in s.targets],
    }
    if s.solver:
        d["solver"] = {k: list(v) if isinstance(v, tuple) else v for k, v in s.solver}
    return d


def _read_yaml(path: Path):
    text = path.read_text()  # OSError propagates; the CLI maps it to its I/O exit code
    try:
        return yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f"line {mark.line + 1}, column {mark.column + 1}" if mark else "unknown position"
        raise ScenarioError(f"{path}: parse error at {where}: {getattr(exc, 'problem', exc)}") from None


def bundled_path(name: str) -> Path:
    """Path of a bundled scenario (``info4``) or table set (``table2``)."""
    base = resources.files("sftloc") / "scenarios"
    for ext in (".scenario", ".table"):
        p = Path(str(base / f"{name}{ext}"))
        if p.exists():
            return p
    raise FileNotFoundError(f"no bundled scenario or table named {name!r}")


def resolve(ref: Union[str, os.PathLike]) -> Path:
    p = Path(ref)
    if p.exists() or p.suffix or os.sep in str(ref):
        return p
    return bundled_path(str(ref))


def load_scenario(ref: Union[str, os.PathLike]) -> Scenario:
    """Load and validate a scenario from a path or bundled name."""
    path = resolve(ref)
    return scenario_from_dict(_read_yaml(path), str(path))


def atomic_write(path: Union[str, os.PathLike], text: str) -> None:
    """Write ``text`` to a temp file beside ``path`` and rename it into place."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent if str(path.parent) else ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_scenario(s: Scenario, path: Union[str, os.PathLike]) -> Path:
    atomic_write(path, yaml.safe_dump(scenario_to_dict(s), sort_keys=False))
    return Path(path)


@dataclass(frozen=True)
class CaseSpec:
    case_id: str
    scenario: Scenario


@dataclass(frozen=True)
class TableSet:
    name: str
    cases: tuple[CaseSpec, ...]


def load_table(ref: Union[str, os.PathLike]) -> TableSet:
    """Load a table set; each case is its scenario with the table's variant, convention and wind."""
    path = resolve(ref)
    d = _read_yaml(path)
    if not isinstance(d, dict) or not isinstance(d.get("cases"), list) or not d["cases"]:
        raise ScenarioError(f"{path}: a table set needs a nonempty 'cases' list")
    cases = []
    for i, c in enumerate(d["cases"]):
        if not isinstance(c, dict) or "scenario" not in c:
            raise ScenarioError(f"cases[{i}]: missing field 'scenario'")
        base = load_scenario(c["scenario"])
        variant = c.get("variant", d.get("variant", base.variant))
        conv = c.get("convention", d.get("convention", base.convention))
        try:
            s = replace(base, variant=variant, convention=conv, wind=_vec(c.get("wind", base.wind), f"cases[{i}].wind"))
        except ScenarioError as exc:
            raise ScenarioError(f"cases[{i}]: {exc}") from None
        cases.append(CaseSpec(str(c.get("id", i + 1)), s))
    return TableSet(str(d.get("name", path.stem)), tuple(cases))


def build_problem(s: Scenario, wind=None) -> Problem:
    """Objective for scenario ``s`` under ``wind`` (default: the scenario's own)."""
    w = s.wind if wind is None else _vec(wind, "wind")
    published = s.convention == "published"
    rule = WitnessRule.EUCLIDEAN if published else WitnessRule.GENERALIZED
    TO, FROM = Direction.TO_TARGET, Direction.FROM_TARGET
    NEAR, FAR = Extremum.NEAREST, Extremum.FARTHEST
    # extended variants: the outbound leg ends at the nearest point, the homebound
    # leg starts at the farthest one; the published scoring swaps which leg gets -F
    out_leg, home_leg = ((FROM, NEAR), (TO, FAR)) if published else ((TO, NEAR), (FROM, FAR))

    def legs(t: Target, spec):
        F = DynamicSet(w, t.speed)
        return tuple(Term(F, t.region, d, e, witness=rule) for d, e in spec)

    ts = s.targets
    v = s.variant
    if v == "FT":
        groups = (sum((legs(t, [(FROM, NEAR), (TO, NEAR)]) for t in ts), ()),)
    elif v == "Sylvester":
        groups = tuple(legs(t, [(FROM, NEAR)]) for t in ts)
    elif v == "SFT":
        groups = tuple(legs(t, [(FROM, NEAR), (TO, NEAR)]) for t in ts)
    elif v == "ExtendedSFT":
        groups = tuple(legs(t, [out_leg, home_leg]) for t in ts)
    elif v == "ExtendedFT":
        groups = (sum((legs(t, [out_leg, home_leg]) for t in ts), ()),)
    else:  # ExtendedSylvester: max over all single legs
        groups = tuple((leg,) for t in ts for leg in legs(t, [out_leg, home_leg]))
    label = f"{s.name}:{v}:wind=({w[0]:g},{w[1]:g})"
    return Problem(groups, constraint=s.constraint, label=label)


def solver_overrides(s: Scenario) -> dict:
    d = s.solver_overrides
    if "x0" in d:
        d["x0"] = _vec(d["x0"], "solver.x0")
    if "improvement_window" in d and d["improvement_window"] is not None:
        w, tol = d["improvement_window"]
        d["improvement_window"] = (int(w), float(tol))
    return d


__all__ = [
    "CONVENTIONS", "VARIANTS", "CaseSpec", "Scenario", "ScenarioError", "TableSet", "Target",
    "atomic_write", "build_problem", "bundled_path", "load_scenario", "load_table",
    "scenario_from_dict", "scenario_to_dict", "solver_overrides", "write_scenario",
]
