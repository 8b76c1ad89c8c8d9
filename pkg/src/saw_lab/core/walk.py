"""The Walk value type and the per-walk constructions built on it."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from saw_lab.core.errors import DimensionMismatchError, WalkError
from saw_lab.core.lattice import (
    Point,
    Step,
    add,
    is_adjacent,
    move,
    origin,
    reflect_e1,
    step_between,
    sub,
)


@dataclass(frozen=True)
class Walk:
    """A positioned lattice path: origin plus an ordered list of unit steps.

    Equality is positional (same dim, origin and steps); use ``shape_equal``
    to compare up to translation.
    """

    dim: int
    origin: Point
    steps: tuple[Step, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.dim < 2:
            raise WalkError(f"Walks live in dimension d >= 2, got {self.dim}")
        if len(self.origin) != self.dim:
            raise DimensionMismatchError(self.dim, len(self.origin))
        for step in self.steps:
            if step.axis > self.dim:
                raise WalkError(f"Step {step} outside dimension {self.dim}")

    @classmethod
    def empty(cls, dim: int, start: Point | None = None) -> Walk:
        return cls(dim, start if start is not None else origin(dim), ())

    @classmethod
    def from_codes(cls, dim: int, codes: Sequence[int], start: Point | None = None) -> Walk:
        return cls(
            dim,
            start if start is not None else origin(dim),
            tuple(Step.from_code(c) for c in codes),
        )

    @classmethod
    def from_vertices(cls, vertices: Sequence[Point]) -> Walk:
        """Build a walk from its vertex sequence (consecutive vertices must be adjacent)."""
        if not vertices:
            raise WalkError("A walk has at least one vertex")
        first = tuple(vertices[0])
        steps = tuple(
            step_between(tuple(vertices[i]), tuple(vertices[i + 1]))
            for i in range(len(vertices) - 1)
        )
        return cls(len(first), first, steps)

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def n(self) -> int:
        return len(self.steps)

    @cached_property
    def vertices(self) -> tuple[Point, ...]:
        """gamma_0 ... gamma_n as prefix sums of the steps."""
        result = [self.origin]
        current = self.origin
        for step in self.steps:
            current = move(current, step)
            result.append(current)
        return tuple(result)

    @property
    def endpoint(self) -> Point:
        return self.vertices[-1]

    @cached_property
    def heights(self) -> tuple[int, ...]:
        return tuple(v[0] for v in self.vertices)

    @property
    def codes(self) -> tuple[int, ...]:
        return tuple(s.code for s in self.steps)

    def translate(self, v: Point) -> Walk:
        return Walk(self.dim, add(self.origin, v), self.steps)

    def at_origin(self) -> Walk:
        """The translate of this walk starting at 0."""
        return Walk(self.dim, origin(self.dim), self.steps)

    def segment(self, i: int, j: int) -> Walk:
        """gamma[i, j] as a positioned walk starting at gamma_i."""
        if not 0 <= i <= j <= self.n:
            raise WalkError(f"Segment [{i}, {j}] outside [0, {self.n}]", self)
        return Walk(self.dim, self.vertices[i], self.steps[i:j])

    def reverse(self) -> Walk:
        """The same path traversed from gamma_n back to gamma_0."""
        return Walk(self.dim, self.endpoint, tuple(s.reversed() for s in reversed(self.steps)))

    def shape_equal(self, other: Walk) -> bool:
        return self.dim == other.dim and self.steps == other.steps

    def __str__(self) -> str:
        from saw_lab.parser.walk_text import format_walk

        return format_walk(self)


@dataclass(frozen=True)
class WalkFlags:
    self_avoiding: bool
    bridge: bool
    halfspace: bool
    closing: bool


@dataclass(frozen=True)
class RenewalReport:
    renewal_times: tuple[int, ...]
    z_renewal_times: tuple[int, ...]


def _check_same_dim(w1: Walk, w2: Walk) -> None:
    if w1.dim != w2.dim:
        raise DimensionMismatchError(w1.dim, w2.dim)


def is_self_avoiding(w: Walk) -> bool:
    return len(set(w.vertices)) == len(w.vertices)


def _require_self_avoiding(w: Walk, what: str) -> None:
    if not is_self_avoiding(w):
        raise WalkError(f"{what} requires a self-avoiding walk", w)


def concat(w1: Walk, w2: Walk) -> Walk:
    """gamma o gamma~: w2 is translated so that it starts at w1's endpoint."""
    _check_same_dim(w1, w2)
    return Walk(w1.dim, w1.origin, w1.steps + w2.steps)


def hang_index(vertices: Sequence[Point]) -> int:
    """Index of the lexicographically maximal vertex (first one on ties)."""
    best = 0
    for i in range(1, len(vertices)):
        if vertices[i] > vertices[best]:
            best = i
    return best


def hang_time(w: Walk) -> int:
    _require_self_avoiding(w, "hang_time")
    return hang_index(w.vertices)


def split_at_hang(w: Walk) -> tuple[Walk, Walk]:
    """(gamma^1, gamma^2) = (gamma[0, hang], gamma[hang, n])."""
    h = hang_time(w)
    return w.segment(0, h), w.segment(h, w.n)


def _flip_vertical(steps: Sequence[Step]) -> tuple[Step, ...]:
    return tuple(s.reversed() if s.is_vertical else s for s in steps)


def unfold(w: Walk) -> Walk:
    """Unf(gamma): gamma^1, one +e_1 edge, then R_{gamma_hang}(gamma^2) shifted by e_1."""
    h = hang_time(w)
    return Walk(w.dim, w.origin, w.steps[:h] + (Step(1, 1),) + _flip_vertical(w.steps[h:]))


def simple_unfold(w: Walk, k: int) -> Walk:
    """gamma[0, k] followed by R_{gamma_k}(gamma[k, n]); k must maximize the height."""
    _require_self_avoiding(w, "simple_unfold")
    if not 0 <= k <= w.n or w.heights[k] != max(w.heights):
        raise WalkError(f"Index {k} does not maximize the e_1 height", w)
    return Walk(w.dim, w.origin, w.steps[:k] + _flip_vertical(w.steps[k:]))


def is_bridge_heights(heights: Sequence[int]) -> bool:
    start, end = heights[0], heights[-1]
    return all(start < h <= end for h in heights[1:])


def is_halfspace_heights(heights: Sequence[int]) -> bool:
    start = heights[0]
    return all(h > start for h in heights[1:])


def classify(w: Walk) -> WalkFlags:
    sa = is_self_avoiding(w)
    heights = w.heights
    return WalkFlags(
        self_avoiding=sa,
        bridge=sa and is_bridge_heights(heights),
        halfspace=sa and is_halfspace_heights(heights),
        closing=sa and w.n >= 1 and is_adjacent(w.origin, w.endpoint),
    )


def _suffix_minima(heights: Sequence[int]) -> list[int]:
    """suffix[k] = min(heights[k:]); suffix[n+1] exceeds every height."""
    n = len(heights) - 1
    suffix = [0] * (n + 2)
    suffix[n + 1] = max(heights) + 1
    for k in range(n, -1, -1):
        suffix[k] = min(heights[k], suffix[k + 1])
    return suffix


def renewal_times_from_heights(heights: Sequence[int]) -> list[int]:
    n = len(heights) - 1
    suffix = _suffix_minima(heights)
    result: list[int] = []
    prefix_max = heights[0]
    for k in range(n + 1):
        h = heights[k]
        if prefix_max <= h and suffix[k + 1] > h:
            result.append(k)
        prefix_max = max(prefix_max, h)
    return result


def z_renewal_times_from_heights(heights: Sequence[int]) -> list[int]:
    n = len(heights) - 1
    if n < 2:
        return []
    suffix = _suffix_minima(heights)
    result: list[int] = []
    prefix_max = heights[0]
    for k in range(n - 1):
        prefix_max = max(prefix_max, heights[k])
        level = heights[k + 1]
        if prefix_max < level and heights[k + 2] == level and suffix[k + 3] > level:
            result.append(k)
    return result


def renewal_report(w: Walk) -> RenewalReport:
    _require_self_avoiding(w, "renewal_report")
    heights = w.heights
    return RenewalReport(
        renewal_times=tuple(renewal_times_from_heights(heights)),
        z_renewal_times=tuple(z_renewal_times_from_heights(heights)),
    )


def edge_swap_at_z_renewal(w: Walk, k: int, axis: int, sign: int) -> Walk:
    """Replace the flat step gamma_{k+1} -> gamma_{k+2} at a z-renewal time by (axis, sign)."""
    if not 2 <= axis <= w.dim or sign not in (1, -1):
        raise WalkError(f"Invalid lateral step axis={axis} sign={sign} in dimension {w.dim}", w)
    if k not in renewal_report(w).z_renewal_times:
        raise WalkError(f"{k} is not a z-renewal time", w)
    new_step = Step(axis, sign)
    if w.steps[k + 1] == new_step:
        raise WalkError(f"Step {k + 1} already equals {new_step}", w)
    steps = list(w.steps)
    steps[k + 1] = new_step
    return Walk(w.dim, w.origin, tuple(steps))


def lateral_orbit(w: Walk, k: int) -> list[Walk]:
    """All 2d-2 walks sharing gamma outside the flat edge at z-renewal time k (w included)."""
    current = w.steps[k + 1] if k + 1 < w.n else None
    orbit: list[Walk] = []
    for axis in range(2, w.dim + 1):
        for sign in (1, -1):
            if current == Step(axis, sign):
                orbit.append(w)
            else:
                orbit.append(edge_swap_at_z_renewal(w, k, axis, sign))
    return orbit


def _require_closing(w: Walk, what: str) -> None:
    if not classify(w).closing:
        raise WalkError(f"{what} requires a closing walk", w)


def cyclic_shift(w: Walk, s: int) -> Walk:
    """Shift the vertex cycle gamma_0 ... gamma_n (closed by the edge back to gamma_0) by s."""
    _require_closing(w, "cyclic_shift")
    cycle = w.vertices
    size = len(cycle)
    s %= size
    return Walk.from_vertices(cycle[s:] + cycle[:s])


def polygon_key(w: Walk) -> bytes:
    """Canonical key of the oriented polygon of a closing walk, up to translation."""
    _require_closing(w, "polygon_key")
    codes = w.codes
    # closing step taking gamma_n back to gamma_0
    closing_code = step_between(w.endpoint, w.origin).code
    cycle = codes + (closing_code,)
    size = len(cycle)
    # each shift drops the step that closes the rotated cycle
    best = min(bytes(cycle[s:] + cycle[:s])[: size - 1] for s in range(size))
    return bytes([w.dim]) + best


def avoids(g: Walk, chi: Walk) -> bool:
    """True when g and chi share exactly the vertex g_0 = chi_end."""
    _check_extension(g, chi)
    return set(g.vertices) & set(chi.vertices) == {g.origin}


def closes_ext(g: Walk, chi: Walk) -> bool:
    """True when g starts at chi's end and ends next to chi's start."""
    _check_extension(g, chi)
    return is_adjacent(g.endpoint, chi.origin)


def _check_extension(g: Walk, chi: Walk) -> None:
    _check_same_dim(g, chi)
    if g.origin != chi.endpoint:
        raise WalkError(
            f"Extension starts at {g.origin}, expected {chi.endpoint}", g
        )


def displacement(w: Walk) -> Point:
    return sub(w.endpoint, w.origin)


def reflect_walk(z: Point, w: Walk) -> Walk:
    """R_z applied vertex-wise."""
    return Walk.from_vertices([reflect_e1(z, v) for v in w.vertices])
