"""Click CLI entry point for saw-lab."""

from __future__ import annotations

import json
import sys
from functools import partial
from pathlib import Path
from typing import Any, NoReturn

import click

from saw_lab import __version__
from saw_lab.config import (
    BOOTSTRAP_RESAMPLES,
    DEFAULT_LADDER,
    DEFAULT_PROBE_MOTIF,
    DEFAULT_SAMPLES,
    FEASIBLE_N,
    FEASIBLE_N_DEFAULT,
)
from saw_lab.core.errors import InfeasibleSizeError, SawLabError
from saw_lab.enumeration.distributions import is_symmetric, is_uniform_over_indices
from saw_lab.enumeration.engine import EnumSpec, WalkClass, key_total, tally
from saw_lab.enumeration.growth import growth_checks, walk_counts
from saw_lab.enumeration.keys import key_closes, key_endpoint, key_hang, key_vertex_at
from saw_lab.enumeration.tables import CountTable, Distribution
from saw_lab.output.csv_out import render_csv
from saw_lab.output.json_out import (
    config_block,
    count_document,
    render_json,
    sample_document,
    verify_document,
)
from saw_lab.output.schema import validate_document
from saw_lab.output.terminal import make_console, render_document
from saw_lab.parser.walk_text import format_walk
from saw_lab.sampler.pivot import PivotConfig, coords_to_walk
from saw_lab.sampler.stats import estimate_exponents
from saw_lab.verify.suites import SUITES, VerifyContext, run_suites

REPORTS = ("count", "endpoint", "midpoint", "hang", "closing", "series")
# Flags that never change a result and are kept out of the config block
UNRECORDED = frozenset({"output", "threads"})


def _int_list(ctx: click.Context, param: click.Parameter, value: str | None) -> tuple[int, ...] | None:
    if value is None:
        return None
    try:
        items = tuple(int(v) for v in value.split(",") if v.strip())
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {value!r}")
    if not items:
        raise click.BadParameter("expected at least one integer")
    return items


def _fail(e: SawLabError) -> NoReturn:
    click.echo(f"Error: {e}", err=True)
    sys.exit(3 if isinstance(e, InfeasibleSizeError) else 2)


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        click.echo(text, nl=False)


def _config(subcommand: str) -> dict[str, Any]:
    params = click.get_current_context().params
    return config_block(subcommand, {k: v for k, v in params.items() if k not in UNRECORDED})


def _note(ctx: click.Context, message: str) -> None:
    if not ctx.obj["quiet"]:
        ctx.obj["progress"].print(f"[dim]{message}[/dim]")


def check_feasible(dim: int, n: int, walk_class: str, force: bool) -> list[str]:
    """Raise InfeasibleSizeError past the feasibility table unless forced."""
    limit = FEASIBLE_N.get(dim, {}).get(walk_class, FEASIBLE_N_DEFAULT)
    if n <= limit:
        return []
    if not force:
        raise InfeasibleSizeError(walk_class, n, limit)
    return [f"forced past feasibility table: n={n} > {limit} for {walk_class}"]


@click.group()
@click.version_option(version=__version__)
@click.option("--no-color", is_flag=True, help="Disable colored output")
@click.option("--quiet", is_flag=True, help="Suppress progress notes")
@click.pass_context
def main(ctx: click.Context, no_color: bool, quiet: bool) -> None:
    """saw: exact enumeration, verification suites and pivot sampling of self-avoiding walks."""
    ctx.ensure_object(dict)
    ctx.obj.update(
        no_color=no_color,
        quiet=quiet,
        console=make_console(no_color),
        progress=make_console(no_color, stderr=True),
    )


def _build_table(
    dim: int, n: int, walk_class: WalkClass, report: str, workers: int | None
) -> tuple[CountTable, dict[str, Any], bool]:
    """(table, summary, with_probability) for one enumerate report."""
    spec = EnumSpec(dim=dim, n=n, walk_class=walk_class)
    summary: dict[str, Any] = {}
    if report == "count":
        return tally(spec, key_total, "total", workers=workers), summary, False
    if report == "endpoint":
        dist = Distribution(tally(spec, key_endpoint, "point", workers=workers))
        summary.update(sup=dist.sup(), symmetric=is_symmetric(dist))
        return dist.table, summary, True
    if report == "midpoint":
        key = partial(key_vertex_at, n // 2)
        dist = Distribution(tally(spec, key, "point", workers=workers))
        summary.update(index=n // 2, sup=dist.sup(), sup_sqrt_n_squared=dist.sup() ** 2 * n)
        return dist.table, summary, True
    if report == "hang":
        dist = Distribution(tally(spec, key_hang, "index", workers=workers))
        summary["uniform"] = is_uniform_over_indices(dist)
        return dist.table, summary, True
    if report == "closing":
        dist = Distribution(tally(spec, key_closes, "flag", workers=workers))
        summary["closing_probability"] = dist.probability(True)
        return dist.table, summary, True

    # series: counts for every length up to n
    counts = walk_counts(dim, n, walk_class, workers=workers)
    table = CountTable.from_counter(dict(enumerate(counts)), dim, n, walk_class.value, "n")
    if walk_class is WalkClass.WALK and n >= 2:
        growth = growth_checks(dim, n, workers=workers)
        summary.update(
            submultiplicative=growth.submultiplicative,
            mu_hat=growth.params.mu_hat,
            c_hw_hat=growth.params.c_hw_hat,
        )
    return table, summary, False


@main.command("enumerate")
@click.option("-d", "--dim", default=2, type=click.IntRange(min=2), help="Lattice dimension")
@click.option("-n", "n", required=True, type=click.IntRange(min=0),
              help="Walk length (largest length for --report series)")
@click.option("--class", "walk_class", default="walk",
              type=click.Choice([c.value for c in WalkClass]), help="Walk class")
@click.option("--report", default="count", type=click.Choice(REPORTS), help="Report kind")
@click.option("--format", "fmt", default="json", type=click.Choice(["json", "csv", "terminal"]),
              help="Output format")
@click.option("-o", "--output", default=None, type=click.Path(dir_okay=False),
              help="Output file (default: stdout)")
@click.option("--threads", default=None, type=click.IntRange(min=1),
              help="Worker processes (default: available CPUs)")
@click.option("--force", is_flag=True, help="Run past the feasibility table")
@click.pass_context
def enumerate_cmd(
    ctx: click.Context,
    dim: int,
    n: int,
    walk_class: str,
    report: str,
    fmt: str,
    output: str | None,
    threads: int | None,
    force: bool,
) -> None:
    """Exact counts and laws by exhaustive enumeration."""
    try:
        warnings = check_feasible(dim, n, walk_class, force)
        _note(ctx, f"Enumerating {walk_class} d={dim} n={n} ({report})")
        table, summary, with_probability = _build_table(
            dim, n, WalkClass(walk_class), report, threads
        )
    except SawLabError as e:
        _fail(e)

    document = count_document(
        table, report, _config("enumerate"), summary, warnings, with_probability
    )
    if fmt == "terminal":
        render_document(document, ctx.obj["console"])
    elif fmt == "csv":
        _emit(render_csv(document), output)
    else:
        _emit(render_json(document), output)


@main.command()
@click.option("--suite", "suites", multiple=True, type=click.Choice(list(SUITES)),
              help="Suite to run (repeatable; default: all)")
@click.option("-d", "--dim", default=2, type=click.IntRange(min=2), help="Lattice dimension")
@click.option("-n", "n", default=None, type=click.IntRange(min=1),
              help="Override every suite's default size")
@click.option("--format", "fmt", default="json", type=click.Choice(["json", "terminal"]),
              help="Output format")
@click.option("-o", "--output", default=None, type=click.Path(dir_okay=False),
              help="Output file (default: stdout)")
@click.option("--threads", default=None, type=click.IntRange(min=1),
              help="Worker processes (default: available CPUs)")
@click.pass_context
def verify(
    ctx: click.Context,
    suites: tuple[str, ...],
    dim: int,
    n: int | None,
    fmt: str,
    output: str | None,
    threads: int | None,
) -> None:
    """Run acceptance suites; exit 1 if any check fails."""
    names = list(suites) or list(SUITES)
    _note(ctx, f"Running suites: {', '.join(names)}")
    try:
        report = run_suites(names, VerifyContext(dim=dim, n=n, workers=threads))
    except SawLabError as e:
        _fail(e)

    document = verify_document(report.to_dict(), _config("verify"))
    if fmt == "terminal":
        render_document(document, ctx.obj["console"])
    else:
        _emit(render_json(document), output)
    for failure in report.failures:
        click.echo(f"FAILED {failure.suite}.{failure.name}: {failure.detail}", err=True)
    sys.exit(report.exit_code)


@main.command()
@click.option("-d", "--dim", default=2, type=click.IntRange(min=2), help="Lattice dimension")
@click.option("-n", "n", default=None, type=click.IntRange(min=1),
              help="Single walk length (instead of --ladder)")
@click.option("--ladder", default=None, callback=_int_list,
              help="Comma-separated walk lengths (default: %s)" % ",".join(map(str, DEFAULT_LADDER)))
@click.option("--samples", default=DEFAULT_SAMPLES, type=click.IntRange(min=1),
              help="Samples per length")
@click.option("--seed", default=0, type=click.IntRange(min=0), help="Root seed")
@click.option("--warmup", default=None, type=click.IntRange(min=0),
              help="Accepted pivots before sampling (default: 10 n)")
@click.option("--thinning", default=None, type=click.IntRange(min=1),
              help="Proposals between samples (default: n/10)")
@click.option("--bootstrap", default=BOOTSTRAP_RESAMPLES, type=click.IntRange(min=0),
              help="Bootstrap resamples for the exponent error")
@click.option("--probe", default=",".join(map(str, DEFAULT_PROBE_MOTIF)), callback=_int_list,
              help="Probe motif as comma-separated step codes")
@click.option("--dump", default=None, type=click.Path(dir_okay=False),
              help="Write every sampled walk, one per line")
@click.option("--format", "fmt", default="json", type=click.Choice(["json", "terminal"]),
              help="Output format")
@click.option("-o", "--output", default=None, type=click.Path(dir_okay=False),
              help="Output file (default: stdout)")
@click.option("--threads", default=None, type=click.IntRange(min=1),
              help="Chains run in parallel (one per length)")
@click.pass_context
def sample(
    ctx: click.Context,
    dim: int,
    n: int | None,
    ladder: tuple[int, ...] | None,
    samples: int,
    seed: int,
    warmup: int | None,
    thinning: int | None,
    bootstrap: int,
    probe: tuple[int, ...],
    dump: str | None,
    fmt: str,
    output: str | None,
    threads: int | None,
) -> None:
    """Pivot-chain estimates of the displacement exponent."""
    if n is not None and ladder is not None:
        raise click.UsageError("Use either -n or --ladder, not both")
    lengths = ladder if ladder is not None else ((n,) if n is not None else DEFAULT_LADDER)
    if any(c >= 2 * dim for c in probe):
        raise click.BadParameter(f"step codes must be < {2 * dim}", param_hint="--probe")

    _note(ctx, f"Sampling d={dim} at n in {list(lengths)} (seed {seed})")
    dump_file = open(dump, "w") if dump else None
    try:
        cfg = PivotConfig(
            dim=dim, n=lengths[0], seed=seed, warmup_pivots=warmup,
            samples=samples, thinning=thinning,
        )

        def write_state(_n: int, coords: Any) -> None:
            dump_file.write(format_walk(coords_to_walk(coords)) + "\n")

        stats = estimate_exponents(
            cfg,
            ladder=lengths,
            probe=probe,
            bootstrap=bootstrap,
            on_state=write_state if dump_file else None,
            workers=threads or 1,
        )
    except SawLabError as e:
        _fail(e)
    finally:
        if dump_file:
            dump_file.close()

    document = sample_document(stats.to_dict(), _config("sample"))
    if fmt == "terminal":
        render_document(document, ctx.obj["console"])
    else:
        _emit(render_json(document), output)


@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def report(ctx: click.Context, path: str) -> None:
    """Validate a JSON report against its schema and render it."""
    try:
        document = json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        click.echo(f"Error: {path} is not JSON: {e}", err=True)
        sys.exit(2)
    errors = validate_document(document)
    if errors:
        for err in errors:
            click.echo(f"Error: {err}", err=True)
        sys.exit(2)
    render_document(document, ctx.obj["console"])
