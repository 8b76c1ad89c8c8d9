"""Shells (walks up to pattern interchanges) and slot partitions at the lex point."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from saw_lab.core.errors import PatternError
from saw_lab.core.lattice import Point, Step, sub
from saw_lab.core.walk import Walk, hang_time
from saw_lab.patterns.occurrences import Occurrence, PatternType, find_occurrences
from saw_lab.patterns.pairs import PatternPair


@dataclass(frozen=True)
class Shell:
    """Skeleton of a walk: the step pieces between slots and the slot cubes.

    Slot bases are relative to the walk's start, so a shell is translation
    invariant.
    """

    dim: int
    pieces: tuple[tuple[Step, ...], ...]
    slots: tuple[Point, ...]
    type_one_length: int

    @property
    def base_length(self) -> int:
        return sum(len(p) for p in self.pieces)

    def length(self, t_one: int, t_two: int) -> int:
        return self.base_length + t_one * self.type_one_length + t_two * (self.type_one_length + 2)

    def allocation(self, n: int) -> tuple[int, int]:
        """(T_I, T_II) shared by every member of length n."""
        extra = n - self.base_length - len(self.slots) * self.type_one_length
        if extra % 2 or not 0 <= extra // 2 <= len(self.slots):
            raise PatternError(f"No member of this shell has length {n}")
        t_two = extra // 2
        return len(self.slots) - t_two, t_two

    def member_lengths(self) -> list[int]:
        return [self.length(len(self.slots) - t, t) for t in range(len(self.slots) + 1)]

    def member(self, types: tuple[PatternType, ...], pp: PatternPair) -> Walk:
        if len(types) != len(self.slots):
            raise PatternError(f"Shell has {len(self.slots)} slots, got {len(types)} types")
        steps: list[Step] = list(self.pieces[0])
        for pattern_type, piece in zip(types, self.pieces[1:]):
            steps.extend(pp.pattern(pattern_type is PatternType.II).steps)
            steps.extend(piece)
        return Walk(self.dim, (0,) * self.dim, tuple(steps))

    def members(self, pp: PatternPair) -> Iterator[Walk]:
        """All 2^|S| walks of the shell, starting at 0."""
        for types in itertools.product((PatternType.I, PatternType.II), repeat=len(self.slots)):
            yield self.member(types, pp)


def shell_of(w: Walk, pp: PatternPair) -> Shell:
    occurrences = find_occurrences(w, pp)
    pieces: list[tuple[Step, ...]] = []
    cursor = 0
    for occ in occurrences:
        pieces.append(w.steps[cursor:occ.index])
        cursor = occ.end
    pieces.append(w.steps[cursor:])
    return Shell(
        dim=w.dim,
        pieces=tuple(pieces),
        slots=tuple(sub(o.base, w.origin) for o in occurrences),
        type_one_length=pp.type_one.n,
    )


@dataclass(frozen=True)
class SlotPartition:
    """Slots before (S_1) and after (S_2) the lex point."""

    first: tuple[int, ...]
    second: tuple[int, ...]
    t_one_first: int
    t_two_first: int

    @property
    def size(self) -> int:
        return len(self.first) + len(self.second)


def partition_at_hang(w: Walk, pp: PatternPair) -> SlotPartition:
    """Split the slots of w at its hanging time.

    Raises PatternError when the lex point lies in a slot cube.
    """
    h = hang_time(w)
    occurrences = find_occurrences(w, pp)
    lex_point = w.vertices[h]
    for i, occ in enumerate(occurrences):
        if pp.in_cube(lex_point, occ.base):
            raise PatternError(f"Lex point {lex_point} lies in slot {i}")
    first = tuple(i for i, o in enumerate(occurrences) if o.index < h)
    second = tuple(i for i, o in enumerate(occurrences) if o.index >= h)
    first_occ: list[Occurrence] = [occurrences[i] for i in first]
    t_two = sum(1 for o in first_occ if o.pattern_type is PatternType.II)
    return SlotPartition(
        first=first,
        second=second,
        t_one_first=len(first_occ) - t_two,
        t_two_first=t_two,
    )
