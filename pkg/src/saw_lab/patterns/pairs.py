"""Type I / type II pattern pairs: loading and validity certificates."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import yaml

from saw_lab.core.errors import PatternError, WalkError
from saw_lab.core.lattice import Point
from saw_lab.core.walk import Walk, is_self_avoiding
from saw_lab.parser.walk_text import format_walk, parse_walk


@dataclass(frozen=True)
class PatternPair:
    """Two walks filling the boundary of [0, k]^d with equal endpoints."""

    dim: int
    cube_side: int
    type_one: Walk
    type_two: Walk

    @property
    def entry(self) -> Point:
        """(k, 1, ..., 1)"""
        return (self.cube_side,) + (1,) * (self.dim - 1)

    @property
    def exit(self) -> Point:
        """(k, 2, 1, ..., 1)"""
        return (self.cube_side, 2) + (1,) * (self.dim - 2)

    def in_cube(self, x: Point, base: Point) -> bool:
        return all(0 <= c - b <= self.cube_side for c, b in zip(x, base))

    def pattern(self, type_two: bool) -> Walk:
        return self.type_two if type_two else self.type_one

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "cube_side": self.cube_side,
            "type_one": format_walk(self.type_one),
            "type_two": format_walk(self.type_two),
        }


@dataclass
class PairCertificate:
    """Pass/fail per validity clause."""

    clauses: dict[str, bool] = field(default_factory=dict)
    messages: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return all(self.clauses.values())

    def record(self, clause: str, passed: bool, message: str) -> None:
        self.clauses[clause] = self.clauses.get(clause, True) and passed
        if not passed:
            self.messages.append(f"{clause}: {message}")


def _boundary(dim: int, k: int) -> set[Point]:
    return {
        p for p in itertools.product(range(k + 1), repeat=dim)
        if any(c in (0, k) for c in p)
    }


def validate_pattern_pair(pp: PatternPair) -> PairCertificate:
    """Check containment, endpoints, the +2 length gap, boundary coverage,
    self-avoidance, and that the entry and exit leave the cube only upwards."""
    cert = PairCertificate()
    base = (0,) * pp.dim
    k = pp.cube_side
    boundary = _boundary(pp.dim, k)
    for label, walk in (("type_one", pp.type_one), ("type_two", pp.type_two)):
        if walk.dim != pp.dim:
            cert.record("dimension", False, f"{label} lives in dimension {walk.dim}")
            continue
        cert.record("dimension", True, "")
        cert.record(
            "self_avoiding", is_self_avoiding(walk), f"{label} revisits a vertex"
        )
        outside = [v for v in walk.vertices if not pp.in_cube(v, base)]
        cert.record("contained", not outside, f"{label} leaves [0,{k}]^{pp.dim} at {outside[:1]}")
        cert.record("start", walk.origin == pp.entry, f"{label} starts at {walk.origin}")
        cert.record("end", walk.endpoint == pp.exit, f"{label} ends at {walk.endpoint}")
        missing = boundary - set(walk.vertices)
        cert.record(
            "boundary", not missing, f"{label} misses {len(missing)} boundary vertices"
        )
    cert.record(
        "length",
        pp.type_two.n == pp.type_one.n + 2,
        f"|type_two|={pp.type_two.n}, |type_one|={pp.type_one.n}",
    )
    # entry/exit sit on the top face, so any walk through them climbs above the cube
    on_top = pp.entry[0] == k and pp.exit[0] == k and all(
        0 < c < k for c in pp.entry[1:] + pp.exit[1:]
    )
    cert.record("top_face", on_top, "entry or exit not interior to the top face")
    return cert


def pattern_pair_from_dict(data: dict) -> PatternPair:
    try:
        dim = int(data["dim"])
        pp = PatternPair(
            dim=dim,
            cube_side=int(data["cube_side"]),
            type_one=parse_walk(str(data["type_one"]), dim=dim),
            type_two=parse_walk(str(data["type_two"]), dim=dim),
        )
    except (KeyError, TypeError, ValueError, WalkError) as e:
        raise PatternError(f"Invalid pattern pair document: {e}") from e
    return pp


def load_pattern_pair(path: str | Path) -> PatternPair:
    """Read a pattern pair file (JSON or YAML)."""
    try:
        data = yaml.safe_load(Path(path).read_text(encoding="utf-8"))
    except (OSError, yaml.YAMLError) as e:
        raise PatternError(f"Cannot read pattern pair {path}: {e}") from e
    if not isinstance(data, dict):
        raise PatternError(f"Pattern pair {path} is not a mapping")
    return pattern_pair_from_dict(data)


def default_pattern_pair(dim: int) -> PatternPair:
    """The shipped pair; only d=2 is provided."""
    if dim != 2:
        raise PatternError(f"No shipped pattern pair for dimension {dim}")
    text = resources.files("saw_lab.patterns").joinpath("data/pair_d2.json").read_text(
        encoding="utf-8"
    )
    return pattern_pair_from_dict(yaml.safe_load(text))
