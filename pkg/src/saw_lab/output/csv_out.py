"""CSV rendering of count reports: config as comment lines, then entries."""

from __future__ import annotations

import csv
import io
from typing import Any, Mapping

COLUMNS = ("key", "count", "probability")


def render_csv(document: Mapping[str, Any]) -> str:
    if document.get("schema") != "count_report":
        raise ValueError("CSV output is only available for count reports")
    buf = io.StringIO()
    for name, value in document["config"].items():
        buf.write(f"# {name}: {value}\n")
    buf.write(f"# total: {document['total']}\n")
    for warning in document.get("warnings", []):
        buf.write(f"# warning: {warning}\n")
    writer = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n", extrasaction="ignore")
    writer.writeheader()
    for entry in document["entries"]:
        writer.writerow({"probability": "", **entry})
    return buf.getvalue()
