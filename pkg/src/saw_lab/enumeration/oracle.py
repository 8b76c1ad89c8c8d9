"""Naive reference enumeration, independent of the engine.

Plain recursion with list membership and no pruning; every walk is
classified after it is complete. Only meant for cross-checking at small n.
"""

from __future__ import annotations

from collections import Counter
from typing import Callable, Hashable

from saw_lab.core.lattice import Point, neighbors, origin
from saw_lab.core.walk import Walk, classify
from saw_lab.enumeration.tables import CountTable

CLASSES = ("walk", "bridge", "halfspace", "closing")


def oracle_walks(dim: int, n: int) -> list[Walk]:
    """All self-avoiding walks of length n from 0."""
    result: list[Walk] = []

    def extend(path: list[Point]) -> None:
        if len(path) == n + 1:
            result.append(Walk.from_vertices(path))
            return
        for nxt in neighbors(path[-1]):
            if nxt not in path:
                path.append(nxt)
                extend(path)
                path.pop()

    extend([origin(dim)])
    return result


def in_class(w: Walk, walk_class: str) -> bool:
    flags = classify(w)
    return {
        "walk": flags.self_avoiding,
        "bridge": flags.bridge,
        "halfspace": flags.halfspace,
        "closing": flags.closing,
    }[walk_class]


def oracle_count(dim: int, n: int, walk_class: str) -> int:
    return sum(1 for w in oracle_walks(dim, n) if in_class(w, walk_class))


def oracle_table(
    dim: int,
    n: int,
    walk_class: str,
    key: Callable[[Walk], Hashable],
    key_kind: str = "key",
) -> CountTable:
    counter: Counter[Hashable] = Counter(
        key(w) for w in oracle_walks(dim, n) if in_class(w, walk_class)
    )
    return CountTable.from_counter(counter, dim, n, walk_class, key_kind)


def oracle_counts(dim: int, n: int) -> dict[str, int]:
    """Counts of every class, from a single pass over the length-n walks."""
    counts = dict.fromkeys(CLASSES, 0)
    for w in oracle_walks(dim, n):
        flags = classify(w)
        counts["walk"] += flags.self_avoiding
        counts["bridge"] += flags.bridge
        counts["halfspace"] += flags.halfspace
        counts["closing"] += flags.closing
    return counts
