"""Wind-neglected versus wind-included experiments and table emission."""

from __future__ import annotations

import csv
import io
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .oracle import grid_min
from .problem import evaluate
from .scenario import CaseSpec, Scenario, atomic_write, build_problem, solver_overrides
from .solver import default_config, robust_solve

COLUMNS = ("case_id", "xN1", "xN2", "Z_N", "xI1", "xI2", "Z_I", "abs_imp", "rel_imp", "oracle_value")


@dataclass(frozen=True)
class CaseReport:
    case_id: str
    x_neglected: np.ndarray
    Z_N: float
    x_included: np.ndarray
    Z_I: float
    abs_imp: float
    rel_imp: float
    oracle_value: Optional[float]
    warnings: tuple[str, ...] = field(default=())

    def row(self) -> dict:
        return {
            "case_id": self.case_id,
            "xN1": self.x_neglected[0],
            "xN2": self.x_neglected[1],
            "Z_N": self.Z_N,
            "xI1": self.x_included[0],
            "xI2": self.x_included[1],
            "Z_I": self.Z_I,
            "abs_imp": self.abs_imp,
            "rel_imp": self.rel_imp,
            "oracle_value": self.oracle_value,
        }


def _solve(s: Scenario, wind, **overrides):
    P = build_problem(s, wind)
    kw = solver_overrides(s)
    kw.update({k: v for k, v in overrides.items() if v is not None})
    return P, robust_solve(P, default_config(P, **kw))


def run_case(
    s: Scenario,
    wind_override=None,
    case_id: Optional[str] = None,
    with_oracle: bool = True,
    **solver_kw,
) -> CaseReport:
    """Solve with the wind ignored and with it included; score both under the true wind."""
    wind = s.wind if wind_override is None else wind_override
    P_true, res_i = _solve(s, wind, **solver_kw)
    _, res_n = _solve(s, (0.0, 0.0), **solver_kw)
    x_n = res_n.best_x
    z_n = evaluate(P_true, x_n).objective
    z_i = res_i.best_value
    abs_imp = z_n - z_i
    rel_imp = abs_imp / z_n * 100.0 if z_n > 0 else 0.0
    oracle_value = grid_min(P_true)[0] if with_oracle else None
    return CaseReport(
        case_id=case_id if case_id is not None else s.name,
        x_neglected=x_n,
        Z_N=z_n,
        x_included=res_i.best_x,
        Z_I=z_i,
        abs_imp=abs_imp,
        rel_imp=rel_imp,
        oracle_value=oracle_value,
        warnings=tuple(res_i.warnings) + tuple(res_n.warnings),
    )


def thread_count() -> int:
    env = os.environ.get("SFT_THREADS")
    if env:
        n = int(env)
        if n < 1:
            raise ValueError(f"SFT_THREADS must be a positive integer, got {env!r}")
        return n
    return os.cpu_count() or 1


def run_table(cases: Sequence[CaseSpec], with_oracle: bool = True, threads: Optional[int] = None, **solver_kw):
    """Run cases concurrently; reports come back in input order."""
    n = thread_count() if threads is None else threads

    def one(c: CaseSpec):
        return run_case(c.scenario, case_id=c.case_id, with_oracle=with_oracle, **solver_kw)

    if n == 1:
        return [one(c) for c in cases]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(one, cases))


def _fmt(col, v):
    if v is None:
        return ""
    if col == "case_id":
        return str(v)
    if col == "rel_imp":
        return f"{v:.2f}"
    # integer seconds and integer coordinates, as in the published tables
    return str(int(np.round(v)))


def render_table(reports: Sequence[CaseReport], fmt: str = "csv") -> str:
    if not reports:
        raise ValueError("no reports to emit")
    rows = [[_fmt(c, r.row()[c]) for c in COLUMNS] for r in reports]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(COLUMNS)
        w.writerows(rows)
        return buf.getvalue()
    if fmt == "markdown":
        lines = ["| " + " | ".join(COLUMNS) + " |", "|" + "---|" * len(COLUMNS)]
        lines += ["| " + " | ".join(r) + " |" for r in rows]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown table format {fmt!r}")


def emit_table(reports: Sequence[CaseReport], fmt: str, out) -> str:
    """Write the table atomically; returns the written text."""
    text = render_table(reports, fmt)
    atomic_write(out, text)
    return text
