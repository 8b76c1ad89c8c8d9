"""Rich terminal rendering of report documents."""

from __future__ import annotations

from typing import Any, Mapping

from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

STATUS_STYLES = {
    "pass": ("PASS", "green"),
    "fail": ("FAIL", "red bold"),
    "skip": ("SKIP", "dim"),
}

# Rows shown before a count table is elided
MAX_ROWS = 40


def make_console(no_color: bool = False, stderr: bool = False) -> Console:
    return Console(no_color=no_color, stderr=stderr, highlight=False)


def render_document(document: Mapping[str, Any], console: Console) -> None:
    """Dispatch on the document's schema name."""
    renderers = {
        "count_report": render_count_report,
        "verify_report": render_verify_report,
        "sample_report": render_sample_report,
    }
    renderer = renderers.get(document.get("schema", ""))
    if renderer is None:
        console.print(f"[red]Cannot render schema {document.get('schema')!r}[/red]")
        return
    renderer(document, console)


def _title(document: Mapping[str, Any]) -> Text:
    config = document.get("config", {})
    title = Text()
    title.append(f"saw {config.get('subcommand', '?')}", style="bold")
    title.append(f"  (saw-lab {config.get('version', '?')})", style="dim")
    return title


def _render_warnings(document: Mapping[str, Any], console: Console) -> None:
    for warning in document.get("warnings", []):
        console.print(f"  [yellow]Warning:[/yellow] {warning}")


def render_count_report(document: Mapping[str, Any], console: Console) -> None:
    header = Text()
    header.append(f"{document['report']} ", style="cyan bold")
    header.append(f"class={document['class']} d={document['dim']} n={document['n']}")
    header.append(f"  total={document['total']}", style="bold")
    console.print(Panel(header, title=_title(document), title_align="left"))

    entries = document.get("entries", [])
    if entries and document["report"] != "count":
        table = Table(show_header=True)
        table.add_column(document.get("key_kind", "key"), style="bold")
        table.add_column("count", justify="right")
        table.add_column("probability", justify="right")
        for entry in entries[:MAX_ROWS]:
            table.add_row(entry["key"], entry["count"], entry.get("probability", ""))
        console.print(table)
        if len(entries) > MAX_ROWS:
            console.print(f"[dim]... {len(entries) - MAX_ROWS} more rows[/dim]")

    summary = document.get("summary") or {}
    if summary:
        table = Table(title="Summary", show_header=False, box=None)
        for name, value in summary.items():
            table.add_row(f"[cyan]{name}[/cyan]", str(value))
        console.print(table)
    _render_warnings(document, console)


def render_verify_report(document: Mapping[str, Any], console: Console) -> None:
    table = Table(title="Checks", show_header=True)
    table.add_column("Suite", style="bold")
    table.add_column("Check")
    table.add_column("Status")
    table.add_column("Detail", overflow="fold")
    for c in document.get("checks", []):
        label, style = STATUS_STYLES[c["status"]]
        table.add_row(c["suite"], c["name"], f"[{style}]{label}[/{style}]", c.get("detail", ""))
    console.print(Panel(_title(document), border_style="cyan"))
    console.print(table)

    audits = document.get("audits", [])
    if audits:
        table = Table(title="Multi-valued map audits", show_header=True)
        table.add_column("Map", style="bold")
        table.add_column("|A|", justify="right")
        table.add_column("|B|", justify="right")
        table.add_column("sum Lambda", justify="right")
        table.add_column("max Lambda", justify="right")
        table.add_column("Worst b", overflow="fold")
        for a in audits:
            table.add_row(a["name"], a["domain_size"], a["codomain_size"],
                          a["lambda_sum"], a["lambda_max"], a.get("worst") or "")
        console.print(table)

    _render_warnings(document, console)
    if document.get("passed"):
        console.print("\n  [green bold]All checks passed[/green bold]")
    else:
        failed = ", ".join(document.get("failed", []))
        console.print(f"\n  [red bold]Failed: {failed}[/red bold]")


def render_sample_report(document: Mapping[str, Any], console: Console) -> None:
    console.print(Panel(_title(document), border_style="cyan"))
    table = Table(title=f"Pivot ladder (d={document['dim']}, seed={document['seed']})")
    table.add_column("n", justify="right", style="bold")
    table.add_column("samples", justify="right")
    table.add_column("E|G_n|^2", justify="right")
    table.add_column("stderr", justify="right")
    table.add_column("n^{4/3d}", justify="right")
    table.add_column("accept", justify="right")
    table.add_column("probe", justify="right")
    for p in document.get("points", []):
        bound_style = "green" if p.get("madras_holds") else "red"
        table.add_row(
            str(p["n"]),
            str(p["samples"]),
            f"{p['msd_mean']:.2f}",
            f"{p.get('msd_stderr', 0.0):.2f}",
            f"[{bound_style}]{p.get('madras_bound', 0.0):.2f}[/{bound_style}]",
            f"{p['acceptance_rate']:.3f}",
            f"{p['probe_density']:.3f}",
        )
    console.print(table)
    two_nu = document.get("two_nu")
    if two_nu is not None:
        line = f"  2nu = {two_nu:.4f}"
        if document.get("two_nu_error") is not None:
            low, high = document["two_nu_interval"]
            line += f" +/- {document['two_nu_error']:.4f}  [{low:.4f}, {high:.4f}]"
        console.print(line)
    _render_warnings(document, console)
