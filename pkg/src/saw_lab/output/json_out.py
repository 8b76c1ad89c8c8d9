"""JSON report documents.

Counts are decimal strings and exact probabilities are "p/q" strings, so
documents stay exact however large the numbers get.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Mapping

from saw_lab import __version__
from saw_lab.config import SCHEMA_VERSION
from saw_lab.enumeration.tables import CountTable, Distribution
from saw_lab.parser.walk_text import format_point


def config_block(subcommand: str, params: Mapping[str, Any]) -> dict[str, Any]:
    """Everything needed to rerun the command that wrote a document."""
    block: dict[str, Any] = {"subcommand": subcommand, "version": __version__}
    for name in sorted(params):
        block[name] = _serialize_value(params[name])
    return block


def format_key(key: Any) -> str:
    if isinstance(key, bool):
        return "true" if key else "false"
    if isinstance(key, tuple) and all(isinstance(c, int) for c in key):
        return format_point(key)
    if isinstance(key, bytes):
        return key.hex()
    return str(key)


def count_document(
    table: CountTable,
    report: str,
    config: dict[str, Any],
    summary: Mapping[str, Any] | None = None,
    warnings: list[str] | None = None,
    with_probability: bool = True,
) -> dict[str, Any]:
    """Serialize an exact count table for ``saw enumerate``."""
    dist = Distribution(table)
    entries = []
    for key, count in table.sorted_items():
        entry: dict[str, Any] = {"key": format_key(key), "count": str(count)}
        if with_probability:
            entry["probability"] = str(dist.probability(key))
        entries.append(entry)
    return {
        "schema": "count_report",
        "schema_version": SCHEMA_VERSION,
        "config": config,
        "report": report,
        "dim": table.dim,
        "n": table.n,
        "class": table.walk_class,
        "key_kind": table.key_kind,
        "total": str(table.total),
        "entries": entries,
        "summary": {k: _serialize_value(v) for k, v in (summary or {}).items()},
        "warnings": list(warnings or []),
    }


def verify_document(report_dict: dict[str, Any], config: dict[str, Any]) -> dict[str, Any]:
    return {
        "schema": "verify_report",
        "schema_version": SCHEMA_VERSION,
        "config": config,
        **report_dict,
    }


def sample_document(stats_dict: dict[str, Any], config: dict[str, Any]) -> dict[str, Any]:
    return {
        "schema": "sample_report",
        "schema_version": SCHEMA_VERSION,
        "config": config,
        **stats_dict,
    }


def render_json(document: Mapping[str, Any]) -> str:
    """Produce stable JSON text (sorted config, fixed indentation)."""
    return json.dumps(document, indent=2, default=_serialize_value) + "\n"


def _serialize_value(value: Any) -> Any:
    """Ensure value is JSON-serializable."""
    if isinstance(value, (str, int, float, bool, type(None))):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_serialize_value(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _serialize_value(v) for k, v in value.items()}
    return str(value)
