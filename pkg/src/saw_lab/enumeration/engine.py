"""Backtracking enumeration of self-avoiding walks from the origin.

The search keeps an occupancy grid over the box [-n-1, n+1]^d (flat-indexed
bytearray) and prunes partial walks that cannot complete into the requested
class. Tallies split the tree at a fixed prefix depth and process the
subtrees in a process pool; results are merged in prefix order.
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Hashable, Iterator, Sequence

from saw_lab.config import DEFAULT_SPLIT_DEPTH
from saw_lab.core.errors import EnumerationError
from saw_lab.core.lattice import Point, Step, origin
from saw_lab.core.walk import Walk, z_renewal_times_from_heights
from saw_lab.enumeration.tables import CountTable

KeyFn = Callable[[Sequence[Point]], Hashable]


class WalkClass(Enum):
    WALK = "walk"
    BRIDGE = "bridge"
    HALFSPACE = "halfspace"
    CLOSING = "closing"


@dataclass(frozen=True)
class EnumSpec:
    """What to enumerate: length-n walks from 0 of one class, plus optional constraints."""

    dim: int
    n: int
    walk_class: WalkClass = WalkClass.WALK
    prefix: Walk | None = None
    hang_time: int | None = None
    endpoint: Point | None = None
    min_z_renewals: int | None = None

    def validate(self) -> None:
        if self.dim < 2:
            raise EnumerationError(f"dim must be >= 2, got {self.dim}")
        if self.n < 0:
            raise EnumerationError(f"n must be >= 0, got {self.n}")
        if self.prefix is not None:
            if self.prefix.dim != self.dim:
                raise EnumerationError(
                    f"Prefix lives in dimension {self.prefix.dim}, expected {self.dim}"
                )
            if any(self.prefix.origin):
                raise EnumerationError("Prefix must start at the origin")
            if self.prefix.n > self.n:
                raise EnumerationError(f"Prefix length {self.prefix.n} exceeds n={self.n}")
        if self.hang_time is not None and not 0 <= self.hang_time <= self.n:
            raise EnumerationError(f"hang_time {self.hang_time} outside [0, {self.n}]")
        if self.endpoint is not None and len(self.endpoint) != self.dim:
            raise EnumerationError(f"Endpoint {self.endpoint} is not in dimension {self.dim}")
        if self.min_z_renewals is not None and self.min_z_renewals < 0:
            raise EnumerationError("min_z_renewals must be >= 0")

    @property
    def prefix_codes(self) -> tuple[int, ...]:
        return self.prefix.codes if self.prefix is not None else ()


class _Search:
    """Mutable DFS state for one subtree (the forced codes are replayed first)."""

    def __init__(self, spec: EnumSpec, forced: Sequence[int]) -> None:
        dim, n = spec.dim, spec.n
        self.spec = spec
        self.n = n
        self.dim = dim
        self.walk_class = spec.walk_class
        self.target = spec.endpoint
        self.hang = spec.hang_time

        side = 2 * n + 3
        strides = [side ** i for i in range(dim)]
        self.offsets = []
        for code in range(2 * dim):
            stride = strides[code >> 1]
            self.offsets.append(-stride if code & 1 else stride)
        self.grid = bytearray(side ** dim)

        start = origin(dim)
        start_flat = sum((n + 1) * s for s in strides)
        self.grid[start_flat] = 1
        self.path: list[Point] = [start]
        self.flats: list[int] = [start_flat]
        self.codes: list[int] = []
        self.max_heights: list[int] = [0]
        self.lex_max: list[Point] = [start]

        self.dead = False
        if self.target is not None and _l1_between(start, self.target) > n:
            self.dead = True
        if self.walk_class is WalkClass.CLOSING and (n == 0 or n % 2 == 0):
            self.dead = True
        for i, code in enumerate(forced, start=1):
            if self.dead or not self._push(code, i):
                self.dead = True
                break

    def _admissible(self, nxt: Point, i: int) -> bool:
        remaining = self.n - i
        h = nxt[0]
        wc = self.walk_class
        if wc is WalkClass.BRIDGE:
            if h <= 0 or max(self.max_heights[-1], h) - h > remaining:
                return False
        elif wc is WalkClass.HALFSPACE:
            if h <= 0:
                return False
        elif wc is WalkClass.CLOSING:
            if sum(abs(c) for c in nxt) - 1 > remaining:
                return False
        if self.target is not None and _l1_between(nxt, self.target) > remaining:
            return False
        hang = self.hang
        if hang is not None:
            if i == hang:
                if not nxt > self.lex_max[-1]:
                    return False
            elif i > hang and not nxt < self.path[hang]:
                return False
        return True

    def _push(self, code: int, i: int) -> bool:
        flat = self.flats[-1] + self.offsets[code]
        if self.grid[flat]:
            return False
        cur = self.path[-1]
        axis = code >> 1
        nxt = cur[:axis] + (cur[axis] + (-1 if code & 1 else 1),) + cur[axis + 1:]
        if not self._admissible(nxt, i):
            return False
        self.grid[flat] = 1
        self.path.append(nxt)
        self.flats.append(flat)
        self.codes.append(code)
        self.max_heights.append(max(self.max_heights[-1], nxt[0]))
        self.lex_max.append(nxt if nxt > self.lex_max[-1] else self.lex_max[-1])
        return True

    def _pop(self) -> None:
        self.grid[self.flats.pop()] = 0
        self.path.pop()
        self.codes.pop()
        self.max_heights.pop()
        self.lex_max.pop()

    def _leaf_ok(self) -> bool:
        end = self.path[-1]
        wc = self.walk_class
        if wc is WalkClass.BRIDGE and end[0] < self.max_heights[-1]:
            return False
        if wc is WalkClass.CLOSING and sum(abs(c) for c in end) != 1:
            return False
        if self.target is not None and end != self.target:
            return False
        m = self.spec.min_z_renewals
        if m:
            heights = [v[0] for v in self.path]
            if len(z_renewal_times_from_heights(heights)) < m:
                return False
        return True

    def walk_tree(self, stop: int | None = None) -> Iterator[None]:
        """Yield once per accepted node at depth ``stop`` (default n); state is in ``self.path``.

        Nodes at a depth short of n are yielded without the leaf checks.
        """
        if self.dead:
            return
        stop = self.n if stop is None else stop
        full = stop == self.n
        base = len(self.codes)
        if base >= stop:
            if base == stop and (not full or self._leaf_ok()):
                yield
            return
        ncodes = 2 * self.dim
        next_code = [0] * (stop + 1)
        depth = base
        while True:
            if depth == stop:
                if not full or self._leaf_ok():
                    yield
                self._pop()
                depth -= 1
                continue
            code = next_code[depth]
            if code == ncodes:
                next_code[depth] = 0
                if depth == base:
                    return
                self._pop()
                depth -= 1
                continue
            next_code[depth] = code + 1
            if self._push(code, depth + 1):
                depth += 1


def _l1_between(p: Point, q: Point) -> int:
    return sum(abs(a - b) for a, b in zip(p, q))


def _steps_for(dim: int) -> list[Step]:
    return [Step.from_code(c) for c in range(2 * dim)]


def iter_walks(spec: EnumSpec) -> Iterator[Walk]:
    """Every walk matching ``spec``, in step-code lexicographic order."""
    spec.validate()
    search = _Search(spec, spec.prefix_codes)
    steps = _steps_for(spec.dim)
    start = origin(spec.dim)
    for _ in search.walk_tree():
        yield Walk(spec.dim, start, tuple(steps[c] for c in search.codes))


def run_enumeration(
    spec: EnumSpec, visitor: Callable[[Walk], None] | None = None
) -> CountTable:
    """Visit every matching walk once (single process); return the visit count."""
    visits = 0
    for walk in iter_walks(spec):
        if visitor is not None:
            visitor(walk)
        visits += 1
    return CountTable.from_counter(
        {(spec.walk_class.value, spec.n): visits},
        spec.dim, spec.n, spec.walk_class.value, "class",
    )


def split_prefixes(spec: EnumSpec, depth: int) -> list[tuple[int, ...]]:
    """Admissible code prefixes of the given depth (never shorter than spec.prefix)."""
    spec.validate()
    depth = max(min(depth, spec.n), len(spec.prefix_codes))
    search = _Search(spec, spec.prefix_codes)
    return [tuple(search.codes) for _ in search.walk_tree(depth)]


def _tally_subtree(spec: EnumSpec, forced: tuple[int, ...], key_fn: KeyFn) -> Counter:
    counter: Counter[Hashable] = Counter()
    search = _Search(spec, forced)
    path = search.path
    for _ in search.walk_tree():
        key = key_fn(path)
        if key is not None:
            counter[key] += 1
    return counter


def default_workers() -> int:
    return os.cpu_count() or 1


def tally(
    spec: EnumSpec,
    key_fn: KeyFn,
    key_kind: str = "key",
    workers: int | None = None,
    split_depth: int = DEFAULT_SPLIT_DEPTH,
) -> CountTable:
    """Count matching walks by ``key_fn(vertices)``; ``None`` keys are dropped.

    ``key_fn`` must be picklable (a module-level function or a
    ``functools.partial`` of one) when ``workers`` > 1. It receives the live
    vertex list and must not keep a reference to it.
    """
    spec.validate()
    workers = default_workers() if workers is None else workers
    if workers < 1:
        raise EnumerationError(f"workers must be >= 1, got {workers}")

    prefixes = split_prefixes(spec, split_depth)
    if workers == 1 or len(prefixes) < 2:
        parts = [_tally_subtree(spec, p, key_fn) for p in prefixes]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(
                _tally_subtree,
                [spec] * len(prefixes),
                prefixes,
                [key_fn] * len(prefixes),
                chunksize=max(1, len(prefixes) // (4 * workers)),
            ))

    merged: Counter[Hashable] = Counter()
    for part in parts:
        merged.update(part)
    return CountTable.from_counter(merged, spec.dim, spec.n, spec.walk_class.value, key_kind)


def key_total(path: Sequence[Point]) -> str:
    return "total"


def count_class(
    dim: int,
    n: int,
    walk_class: WalkClass | str,
    workers: int | None = None,
) -> int:
    """|{length-n walks from 0 in the class}|."""
    spec = EnumSpec(dim=dim, n=n, walk_class=WalkClass(walk_class))
    return tally(spec, key_total, "total", workers=workers).total
