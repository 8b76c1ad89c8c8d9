"""Picklable tally keys over a walk's vertex list."""

from __future__ import annotations

from typing import Sequence

from saw_lab.core.lattice import Point, project_h
from saw_lab.core.walk import (
    Walk,
    hang_index,
    polygon_key,
    z_renewal_times_from_heights,
)


def key_endpoint(path: Sequence[Point]) -> Point:
    return path[-1]


def key_vertex_at(index: int, path: Sequence[Point]) -> Point:
    return path[index]


def key_hang(path: Sequence[Point]) -> int:
    return hang_index(path)


def key_projection(path: Sequence[Point]) -> Point:
    return project_h(path[-1])


def key_projection_if_renewed(min_z: int, path: Sequence[Point]) -> Point | None:
    """Endpoint projection of walks with at least ``min_z`` z-renewal times."""
    if len(z_renewal_times_from_heights([v[0] for v in path])) < min_z:
        return None
    return project_h(path[-1])


def key_closes(path: Sequence[Point]) -> bool:
    return len(path) > 1 and sum(abs(c) for c in path[-1]) == 1


def key_few_z_renewals(m: int, path: Sequence[Point]) -> bool:
    return len(z_renewal_times_from_heights([v[0] for v in path])) < m


def key_polygon(path: Sequence[Point]) -> bytes:
    return polygon_key(Walk.from_vertices(path))
