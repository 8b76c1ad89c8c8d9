"""Points, steps and geometric maps on the hypercubic lattice Z^d.

Points are plain tuples of ints. Tuple comparison in Python is already the
lexicographic order, so the lex point of a vertex set is simply ``max``.
Coordinate 1 (tuple index 0) is the vertical e_1 direction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

from saw_lab.core.errors import DimensionMismatchError

Point = tuple[int, ...]


class Ordering(Enum):
    LT = "lt"
    EQ = "eq"
    GT = "gt"


@dataclass(frozen=True)
class Step:
    """A unit increment ``sign * e_axis`` (axis is 1-based)."""

    axis: int
    sign: int

    def __post_init__(self) -> None:
        if self.axis < 1:
            raise ValueError(f"Step axis must be >= 1, got {self.axis}")
        if self.sign not in (1, -1):
            raise ValueError(f"Step sign must be +1 or -1, got {self.sign}")

    @property
    def code(self) -> int:
        """Compact integer code: 2*(axis-1) for +, 2*(axis-1)+1 for -."""
        return 2 * (self.axis - 1) + (0 if self.sign > 0 else 1)

    @classmethod
    def from_code(cls, code: int) -> Step:
        return cls(axis=code // 2 + 1, sign=1 if code % 2 == 0 else -1)

    def vector(self, dim: int) -> Point:
        if self.axis > dim:
            raise ValueError(f"Step axis {self.axis} outside dimension {dim}")
        return tuple(self.sign if i == self.axis - 1 else 0 for i in range(dim))

    def reversed(self) -> Step:
        return Step(self.axis, -self.sign)

    @property
    def is_vertical(self) -> bool:
        return self.axis == 1

    def __str__(self) -> str:
        return f"{'+' if self.sign > 0 else '-'}{self.axis}"


def _check_dims(p: Point, q: Point) -> None:
    if len(p) != len(q):
        raise DimensionMismatchError(len(p), len(q))


def origin(dim: int) -> Point:
    return (0,) * dim


def unit(dim: int, axis: int) -> Point:
    """The basis vector e_axis (1-based axis)."""
    return Step(axis, 1).vector(dim)


def add(p: Point, q: Point) -> Point:
    _check_dims(p, q)
    return tuple(a + b for a, b in zip(p, q))


def sub(p: Point, q: Point) -> Point:
    _check_dims(p, q)
    return tuple(a - b for a, b in zip(p, q))


def move(p: Point, step: Step) -> Point:
    i = step.axis - 1
    return p[:i] + (p[i] + step.sign,) + p[i + 1:]


def l1_norm(p: Point) -> int:
    return sum(abs(c) for c in p)


def norm_sq(p: Point) -> int:
    return sum(c * c for c in p)


def is_adjacent(p: Point, q: Point) -> bool:
    _check_dims(p, q)
    return l1_norm(sub(p, q)) == 1


def neighbors(p: Point) -> list[Point]:
    """The 2d nearest neighbours of p, in step-code order."""
    return [move(p, Step.from_code(c)) for c in range(2 * len(p))]


def lex_compare(p: Point, q: Point) -> Ordering:
    _check_dims(p, q)
    if p < q:
        return Ordering.LT
    if p > q:
        return Ordering.GT
    return Ordering.EQ


def height(p: Point) -> int:
    """<p | e_1>."""
    return p[0]


def reflect_e1(z: Point, x: Point) -> Point:
    """R_z(x) = x + 2<z - x | e_1> e_1."""
    _check_dims(z, x)
    return (2 * z[0] - x[0],) + x[1:]


def project_h(x: Point) -> Point:
    """Orthogonal projection onto the hyperplane <x | e_1> = 0."""
    return (0,) + x[1:]


def step_between(p: Point, q: Point) -> Step:
    """The step taking p to its neighbour q."""
    diff = sub(q, p)
    if l1_norm(diff) != 1:
        raise ValueError(f"{p} and {q} are not nearest neighbours")
    for i, c in enumerate(diff):
        if c:
            return Step(i + 1, c)
    raise AssertionError("unreachable")


@dataclass(frozen=True)
class Symmetry:
    """A signed axis permutation: coordinate i of the image is signs[i] * x[perm[i]]."""

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    @property
    def is_identity(self) -> bool:
        return self.perm == tuple(range(len(self.perm))) and all(s == 1 for s in self.signs)

    def apply(self, x: Point) -> Point:
        return tuple(s * x[p] for p, s in zip(self.perm, self.signs))

    def apply_step(self, step: Step) -> Step:
        """Image of a unit step under the (linear) symmetry."""
        i = self.perm.index(step.axis - 1)
        return Step(i + 1, step.sign * self.signs[i])


def symmetries(dim: int, include_identity: bool = True) -> list[Symmetry]:
    """All 2^d * d! signed permutations of the axes (the point group of Z^d)."""
    result: list[Symmetry] = []
    for perm in itertools.permutations(range(dim)):
        for signs in itertools.product((1, -1), repeat=dim):
            sym = Symmetry(perm=tuple(perm), signs=tuple(signs))
            if include_identity or not sym.is_identity:
                result.append(sym)
    return result
