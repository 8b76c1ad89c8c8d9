"""Published report schemas and a small recursive validator (no jsonschema dep).

Supported keywords: type, required, properties, additionalProperties,
items, enum, pattern, minimum, maximum.
"""

from __future__ import annotations

import re
from typing import Any

COUNT = {"type": "string", "pattern": r"^\d+$"}
FRACTION = {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}
PROBABILITY = {"type": "number", "minimum": 0, "maximum": 1}
STRINGS = {"type": "array", "items": {"type": "string"}}

_HEADER = {
    "schema": {"type": "string"},
    "schema_version": {"type": "integer", "minimum": 1},
    "config": {
        "type": "object",
        "required": ["subcommand", "version"],
        "properties": {"subcommand": {"type": "string"}, "version": {"type": "string"}},
    },
    "warnings": STRINGS,
}

COUNT_REPORT = {
    "type": "object",
    "required": ["schema", "schema_version", "config", "report", "dim", "n", "class",
                 "key_kind", "total", "entries", "warnings"],
    "additionalProperties": False,
    "properties": {
        **_HEADER,
        "report": {"type": "string",
                   "enum": ["count", "endpoint", "midpoint", "hang", "closing", "series"]},
        "dim": {"type": "integer", "minimum": 1},
        "n": {"type": "integer", "minimum": 0},
        "class": {"type": "string", "enum": ["walk", "bridge", "halfspace", "closing"]},
        "key_kind": {"type": "string"},
        "total": COUNT,
        "entries": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["key", "count"],
                "additionalProperties": False,
                "properties": {"key": {"type": "string"}, "count": COUNT, "probability": FRACTION},
            },
        },
        "summary": {"type": "object"},
    },
}

AUDIT_REPORT = {
    "type": "object",
    "required": ["name", "domain_size", "codomain_size", "lambda_sum", "lambda_max", "passed"],
    "properties": {
        "name": {"type": "string"},
        "domain_size": COUNT,
        "codomain_size": COUNT,
        "lambda_sum": FRACTION,
        "lambda_max": FRACTION,
        "worst": {"type": "string"},
        "max_preimages": {"type": "integer", "minimum": 0},
        "identity_holds": {"type": "boolean"},
        "inequality_holds": {"type": "boolean"},
        "bound_holds": {"type": "boolean"},
        "claims_hold": {"type": "boolean"},
        "passed": {"type": "boolean"},
        "warnings": STRINGS,
    },
}

VERIFY_REPORT = {
    "type": "object",
    "required": ["schema", "schema_version", "config", "passed", "suites", "checks", "failed"],
    "additionalProperties": False,
    "properties": {
        **_HEADER,
        "passed": {"type": "boolean"},
        "suites": STRINGS,
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["suite", "name", "status"],
                "properties": {
                    "suite": {"type": "string"},
                    "name": {"type": "string"},
                    "status": {"type": "string", "enum": ["pass", "fail", "skip"]},
                    "detail": {"type": "string"},
                },
            },
        },
        "failed": STRINGS,
        "audits": {"type": "array", "items": AUDIT_REPORT},
    },
}

_LADDER_POINT = {
    "type": "object",
    "required": ["n", "samples", "msd_mean", "acceptance_rate", "probe_density"],
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "samples": {"type": "integer", "minimum": 1},
        "msd_mean": {"type": "number", "minimum": 0},
        "msd_stderr": {"type": "number", "minimum": 0},
        "acceptance_rate": PROBABILITY,
        "probe_density": PROBABILITY,
        "madras_bound": {"type": "number", "minimum": 0},
        "madras_holds": {"type": "boolean"},
        "histogram": {
            "type": "object",
            "properties": {
                "counts": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                "edges": {"type": "array", "items": {"type": "number"}},
            },
        },
    },
}

SAMPLE_REPORT = {
    "type": "object",
    "required": ["schema", "schema_version", "config", "dim", "seed", "points", "two_nu"],
    "additionalProperties": False,
    "properties": {
        **_HEADER,
        "dim": {"type": "integer", "minimum": 2},
        "seed": {"type": "integer", "minimum": 0},
        "probe": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "points": {"type": "array", "items": _LADDER_POINT},
        "two_nu": {"type": "number"},
        "two_nu_error": {"type": "number", "minimum": 0},
        "two_nu_interval": {"type": "array", "items": {"type": "number"}},
        "madras_holds": {"type": "boolean"},
    },
}

SCHEMAS: dict[str, dict] = {
    "count_report": COUNT_REPORT,
    "verify_report": VERIFY_REPORT,
    "sample_report": SAMPLE_REPORT,
    "audit_report": AUDIT_REPORT,
}


# Python types accepted for each schema type; bools are never numbers
_PY_TYPES: dict[str, type | tuple[type, ...]] = {
    "string": str,
    "integer": int,
    "number": (int, float),
    "boolean": bool,
    "object": dict,
    "array": list,
}


def validate_document(document: Any, name: str | None = None) -> list[str]:
    """Validate a report against its published schema.

    The schema is taken from ``name`` or from the document's own ``schema``
    field. Returns human-readable error strings; empty means valid.
    """
    if name is None:
        name = document.get("schema") if isinstance(document, dict) else None
    schema = SCHEMAS.get(name or "")
    if schema is None:
        return [f"Unknown schema {name!r}"]
    errors: list[str] = []
    _walk(document, schema, "", errors)
    return errors


def _type_ok(value: Any, kind: str | None) -> bool:
    # null stands for an optional result (an unfitted exponent, no worst image)
    if kind is None or value is None or kind not in _PY_TYPES:
        return True
    if isinstance(value, bool) and kind in ("integer", "number"):
        return False
    return isinstance(value, _PY_TYPES[kind])


def _walk(value: Any, node: dict, at: str, errors: list[str]) -> None:
    kind = node.get("type")
    if not _type_ok(value, kind):
        errors.append(f"At '{at}': expected type '{kind}', got '{type(value).__name__}'")
        return
    if value is None:
        return

    if "enum" in node and value not in node["enum"]:
        errors.append(f"At '{at}': value {value!r} not in enum {node['enum']}")
    if isinstance(value, str) and "pattern" in node and re.match(node["pattern"], value) is None:
        errors.append(f"At '{at}': value '{value}' does not match pattern '{node['pattern']}'")
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        low, high = node.get("minimum"), node.get("maximum")
        if low is not None and value < low:
            errors.append(f"At '{at}': value {value} < minimum {low}")
        if high is not None and value > high:
            errors.append(f"At '{at}': value {value} > maximum {high}")

    if isinstance(value, dict) and kind == "object":
        props = node.get("properties", {})
        errors.extend(
            f"At '{at}': missing required field '{field}'"
            for field in node.get("required", [])
            if field not in value
        )
        for key, child in value.items():
            if key in props:
                _walk(child, props[key], f"{at}.{key}" if at else key, errors)
            elif node.get("additionalProperties") is False:
                errors.append(f"At '{at}': unknown field '{key}'")
    elif isinstance(value, list) and kind == "array":
        item_node = node.get("items", {})
        for i, item in enumerate(value):
            _walk(item, item_node, f"{at}[{i}]", errors)
