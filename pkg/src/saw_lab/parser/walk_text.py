"""Textual forms of points and walks.

Point: ``(1,-2)``. Walk: ``+1,+2,-1`` (signed 1-based axes), optionally
prefixed by an origin ``@(x,y,...);``. The origin defaults to 0.
"""

from __future__ import annotations

import re

from saw_lab.core.errors import WalkError
from saw_lab.core.lattice import Point, Step, origin
from saw_lab.core.walk import Walk

_POINT_RE = re.compile(r"^\(\s*-?\d+(\s*,\s*-?\d+)*\s*\)$")
_STEP_RE = re.compile(r"^([+-])(\d+)$")


def format_point(p: Point) -> str:
    return "(" + ",".join(str(c) for c in p) + ")"


def parse_point(text: str) -> Point:
    stripped = text.strip()
    if not _POINT_RE.match(stripped):
        raise ValueError(f"Not a point: {text!r}")
    return tuple(int(c) for c in stripped[1:-1].split(","))


def format_walk(w: Walk) -> str:
    body = ",".join(str(s) for s in w.steps)
    if any(w.origin):
        return f"@{format_point(w.origin)};{body}"
    return body


def parse_walk(text: str, dim: int | None = None) -> Walk:
    """Parse the walk textual form.

    The dimension comes from the origin prefix when present, else from
    ``dim``, else from the largest axis used (at least 2).
    """
    stripped = text.strip()
    start: Point | None = None
    if stripped.startswith("@"):
        head, sep, stripped = stripped[1:].partition(";")
        if not sep:
            raise WalkError(f"Origin prefix must end with ';': {text!r}")
        start = parse_point(head)

    steps: list[Step] = []
    for token in filter(None, (t.strip() for t in stripped.split(","))):
        match = _STEP_RE.match(token)
        if not match:
            raise WalkError(f"Not a step: {token!r}")
        axis = int(match.group(2))
        if axis < 1:
            raise WalkError(f"Axis must be >= 1: {token!r}")
        steps.append(Step(axis, 1 if match.group(1) == "+" else -1))

    if start is not None:
        resolved = len(start)
        if dim is not None and dim != resolved:
            raise WalkError(f"Origin {format_point(start)} is not in dimension {dim}")
    else:
        resolved = dim if dim is not None else max([2] + [s.axis for s in steps])
        start = origin(resolved)
    return Walk(resolved, start, tuple(steps))
