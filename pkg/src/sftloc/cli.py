"""Command line entry point: ``sftloc solve|table|oracle|plot|check``."""

from __future__ import annotations

import logging
import sys
from dataclasses import replace

import click

from .experiment import emit_table, run_case, run_table
from .oracle import grid_min
from .problem import check_uniqueness_conditions
from .scenario import ScenarioError, build_problem, load_scenario, load_table, solver_overrides
from .solver import default_config, robust_solve, solve

EXIT_OK, EXIT_VALIDATION, EXIT_STRICT, EXIT_IO = 0, 1, 2, 3


def _parse_pair(ctx, param, value):
    if value is None:
        return None
    try:
        a, b = (float(p) for p in value.split(","))
    except ValueError:
        raise click.BadParameter("expected two comma-separated numbers, e.g. 0.6,-0.6") from None
    return (a, b)


def _fail(msg: str, code: int):
    click.echo(f"error: {msg}", err=True)
    sys.exit(code)


def _guard(fn):
    """Map validation and I/O failures to their exit codes."""

    def wrapper(*args, **kw):
        try:
            return fn(*args, **kw)
        except ScenarioError as exc:
            _fail(str(exc), EXIT_VALIDATION)
        except ValueError as exc:
            _fail(str(exc), EXIT_VALIDATION)
        except OSError as exc:
            _fail(f"{getattr(exc, 'filename', None) or ''}: {exc.strerror or exc}", EXIT_IO)

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _scenario(ref, wind, convention, variant=None):
    s = load_scenario(ref)
    kw = {}
    if convention:
        kw["convention"] = convention
    if variant:
        kw["variant"] = variant
    if kw:
        s = replace(s, **kw)
    return s.with_wind(wind) if wind is not None else s


_wind_opt = click.option("--wind", callback=_parse_pair, help="Override the wind as sx,sy (m/s).")
_conv_opt = click.option("--convention", type=click.Choice(["exact", "published"]), help="Witness convention.")
_var_opt = click.option(
    "--variant",
    type=click.Choice(["FT", "Sylvester", "SFT", "ExtendedFT", "ExtendedSylvester", "ExtendedSFT"]),
    help="Override the scenario's variant.",
)


@click.group()
def main():
    """Station siting under wind: the SFT family of location problems."""
    # commands echo solver warnings themselves; keep the logger from repeating them
    logging.getLogger("sftloc").addHandler(logging.NullHandler())


@main.command("solve")
@click.argument("scenario")
@_wind_opt
@_conv_opt
@_var_opt
@click.option("--iters", type=int, help="Iterations per run (K).")
@click.option("--step", type=float, help="Step constant c in c/k.")
@click.option("--trace", is_flag=True, help="Print the iterate trace as CSV after the summary.")
@click.option("--single", is_flag=True, help="One plain run from the default start, no restarts.")
@click.option("--strict", is_flag=True, help="Exit with status 2 on solver warnings.")
@_guard
def solve_cmd(scenario, wind, convention, variant, iters, step, trace, single, strict):
    """Solve one scenario under its wind (or --wind)."""
    s = _scenario(scenario, wind, convention, variant)
    P = build_problem(s)
    kw = solver_overrides(s)
    kw.update({k: v for k, v in dict(max_iters=iters, step_c=step).items() if v is not None})
    cfg = default_config(P, record_trace=trace, **kw)
    res = solve(P, cfg) if single else robust_solve(P, cfg)
    click.echo(f"scenario: {s.name}  variant: {P.variant}  convention: {s.convention}")
    click.echo(f"wind: ({s.wind[0]:g}, {s.wind[1]:g})")
    click.echo(f"best x: ({res.best_x[0]:.4f}, {res.best_x[1]:.4f})")
    click.echo(f"best value: {res.best_value:.4f} s")
    click.echo(f"iterations: {res.iterations_run}")
    click.echo(str(check_uniqueness_conditions(P)))
    for w in res.warnings:
        click.echo(f"warning: {w}", err=True)
    if trace and res.trace is not None:
        click.echo("iter,x1,x2,value")
        for k, x1, x2, v in res.trace:
            click.echo(f"{int(k)},{x1:.6f},{x2:.6f},{v:.6f}")
    if strict and res.warnings:
        sys.exit(EXIT_STRICT)


@main.command("table")
@click.argument("table_set")
@click.option("--out", required=True, type=click.Path(dir_okay=False), help="Output file.")
@click.option("--format", "fmt", type=click.Choice(["csv", "markdown"]), default="csv", show_default=True)
@click.option("--no-oracle", is_flag=True, help="Skip the grid-search cross-check column.")
@click.option("--strict", is_flag=True, help="Exit with status 2 on solver warnings.")
@_guard
def table_cmd(table_set, out, fmt, no_oracle, strict):
    """Run every case of a table set (e.g. table2) and write the results."""
    T = load_table(table_set)
    reports = run_table(T.cases, with_oracle=not no_oracle)
    text = emit_table(reports, fmt, out)
    click.echo(text, nl=False)
    warned = [r for r in reports if r.warnings]
    for r in warned:
        for w in r.warnings:
            click.echo(f"warning: case {r.case_id}: {w}", err=True)
    if strict and warned:
        sys.exit(EXIT_STRICT)


@main.command("oracle")
@click.argument("scenario")
@_wind_opt
@_conv_opt
@_var_opt
@_guard
def oracle_cmd(scenario, wind, convention, variant):
    """Brute-force grid minimum of a scenario's objective."""
    s = _scenario(scenario, wind, convention, variant)
    v, x = grid_min(build_problem(s))
    click.echo(f"grid min: {v:.4f} s at ({x[0]:.4f}, {x[1]:.4f})")


@main.command("plot")
@click.argument("scenario")
@click.option("--out", required=True, type=click.Path(dir_okay=False), help="Output SVG file.")
@_wind_opt
@_conv_opt
@_var_opt
@_guard
def plot_cmd(scenario, out, wind, convention, variant):
    """Solve a scenario with and without wind and draw both optima as SVG."""
    from .plot import emit_plot

    s = _scenario(scenario, wind, convention, variant)
    report = run_case(s, with_oracle=False)
    emit_plot(s, report, out)
    click.echo(f"wrote {out}")


@main.command("check")
@click.option("-n", "n", type=int, default=100, show_default=True, help="Random draws per property.")
@click.option("--seed", type=int, default=0, show_default=True)
def check_cmd(n, seed):
    """Run the built-in invariant sweep."""
    from .checks import run_checks

    results = run_checks(n, seed)
    for name, ok, detail in results:
        click.echo(f"{'PASS' if ok else 'FAIL'} {name}{': ' + detail if detail else ''}")
    if not all(ok for _, ok, _ in results):
        sys.exit(EXIT_VALIDATION)


if __name__ == "__main__":
    main()
