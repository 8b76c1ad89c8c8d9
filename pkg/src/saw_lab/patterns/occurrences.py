"""Pattern occurrences in a walk, pattern swaps and constructed embeddings."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from saw_lab.core.errors import PatternError, WalkError
from saw_lab.core.lattice import Point, Step, sub
from saw_lab.core.walk import Walk, is_self_avoiding
from saw_lab.patterns.pairs import PatternPair


class PatternType(Enum):
    I = "I"
    II = "II"

    @property
    def other(self) -> PatternType:
        return PatternType.II if self is PatternType.I else PatternType.I


@dataclass(frozen=True)
class Occurrence:
    """gamma[index, index + |chi|] is a translate of chi; ``base`` is the slot cube corner."""

    index: int
    pattern_type: PatternType
    base: Point
    length: int

    @property
    def end(self) -> int:
        return self.index + self.length


def find_occurrences(w: Walk, pp: PatternPair) -> list[Occurrence]:
    """All occurrences whose slot cube holds no other vertex of w, sorted by index."""
    if not is_self_avoiding(w):
        raise WalkError("find_occurrences requires a self-avoiding walk", w)
    if w.dim != pp.dim:
        return []
    found: list[Occurrence] = []
    vertices = w.vertices
    for pattern_type, chi in ((PatternType.I, pp.type_one), (PatternType.II, pp.type_two)):
        size = chi.n
        for k in range(w.n - size + 1):
            if w.steps[k:k + size] != chi.steps:
                continue
            base = sub(vertices[k], chi.origin)
            owned = all(
                not pp.in_cube(v, base)
                for i, v in enumerate(vertices)
                if i < k or i > k + size
            )
            if owned:
                found.append(Occurrence(k, pattern_type, base, size))
    found.sort(key=lambda o: o.index)
    for prev, cur in zip(found, found[1:]):
        if cur.index < prev.end:
            raise PatternError(
                f"Overlapping occurrences at steps {prev.index} and {cur.index}; "
                "the pattern pair is invalid"
            )
    return found


def swap_pattern(w: Walk, pp: PatternPair, slot: int) -> Walk:
    """Replace the occupant of slot ``slot`` by the other pattern type."""
    occurrences = find_occurrences(w, pp)
    if not 0 <= slot < len(occurrences):
        raise PatternError(f"Slot {slot} out of range (walk has {len(occurrences)} slots)")
    occ = occurrences[slot]
    replacement = pp.pattern(occ.pattern_type is PatternType.I).steps
    steps = w.steps[:occ.index] + replacement + w.steps[occ.end:]
    return Walk(w.dim, w.origin, steps)


def embed_patterns(
    types: Sequence[PatternType],
    pp: PatternPair,
    lead: int = 0,
    tail: int = 0,
) -> Walk:
    """A walk from 0 threading one cube per entry of ``types``.

    The cubes sit along e_2 with a gap of one lattice spacing. The walk runs
    one level above their top faces, dives into each cube through the
    pattern entry, traverses the pattern, climbs back out and moves k+1 steps
    along e_2 to the next cube. ``lead`` e_2 steps precede the first dive;
    ``tail`` e_2 steps follow the last exit. The first occurrence starts at
    step ``lead + 1``.
    """
    if lead < 0 or tail < 0:
        raise PatternError("lead and tail must be >= 0")
    k = pp.cube_side
    up, down, side = Step(1, 1), Step(1, -1), Step(2, 1)
    steps: list[Step] = [side] * lead
    for j, pattern_type in enumerate(types):
        if j:
            steps.extend([side] * (k + 1))
        steps.append(down)
        steps.extend(pp.pattern(pattern_type is PatternType.II).steps)
        steps.append(up)
    steps.extend([side] * tail)
    return Walk(pp.dim, (0,) * pp.dim, tuple(steps))


def pattern_counts(occurrences: Sequence[Occurrence]) -> tuple[int, int]:
    """(T_I, T_II)"""
    t_two = sum(1 for o in occurrences if o.pattern_type is PatternType.II)
    return len(occurrences) - t_two, t_two
