"""Exact laws under the uniform measure on walks, bridges and half-space walks."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial

from saw_lab.core.errors import EnumerationError
from saw_lab.core.lattice import Point, symmetries
from saw_lab.core.walk import Walk, simple_unfold
from saw_lab.enumeration.engine import EnumSpec, WalkClass, count_class, iter_walks, tally
from saw_lab.enumeration.keys import (
    key_endpoint,
    key_hang,
    key_polygon,
    key_projection,
    key_projection_if_renewed,
    key_vertex_at,
)
from saw_lab.enumeration.tables import CountTable, Distribution


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise EnumerationError(message)


def endpoint_distribution(dim: int, n: int, workers: int | None = None) -> Distribution:
    """Law of Gamma_n under the uniform measure on length-n walks."""
    _require(n >= 1, f"endpoint_distribution needs n >= 1, got {n}")
    spec = EnumSpec(dim=dim, n=n)
    return Distribution(tally(spec, key_endpoint, "point", workers=workers))


def midpoint_distribution(dim: int, n: int, workers: int | None = None) -> Distribution:
    """Law of Gamma_{floor(n/2)} under the uniform measure on length-n walks."""
    _require(n >= 2, f"midpoint_distribution needs n >= 2, got {n}")
    spec = EnumSpec(dim=dim, n=n)
    key = partial(key_vertex_at, n // 2)
    return Distribution(tally(spec, key, "point", workers=workers))


def scaled_sup_squared(dist: Distribution) -> Fraction:
    """(sup_x P(x))^2 * n, the square of sup * sqrt(n), kept exact."""
    return dist.sup() ** 2 * dist.table.n


def is_symmetric(dist: Distribution) -> bool:
    """True when per-point counts are invariant under every lattice symmetry."""
    table = dist.table
    for sym in symmetries(table.dim, include_identity=False):
        for point, count in table.entries.items():
            if table.get(sym.apply(point)) != count:
                return False
    return True


def closing_probability(dim: int, n: int, workers: int | None = None) -> Fraction:
    """#closing walks / c_n; zero for even n."""
    _require(n >= 1, f"closing_probability needs n >= 1, got {n}")
    if n % 2 == 0:
        return Fraction(0)
    closing = count_class(dim, n, WalkClass.CLOSING, workers=workers)
    return Fraction(closing, count_class(dim, n, WalkClass.WALK, workers=workers))


@dataclass
class PolygonIdentityReport:
    """How many closing walks map onto each oriented polygon."""

    dim: int
    n: int
    closing: int = 0
    oriented_polygons: int = 0
    multiplicity: Fraction | None = None
    warnings: list[str] = field(default_factory=list)

    @property
    def unoriented_polygons(self) -> int:
        return self.oriented_polygons // 2

    @property
    def holds(self) -> bool:
        """#closing == (n+1) * #oriented polygons."""
        return self.closing == (self.n + 1) * self.oriented_polygons


def polygon_identity_check(dim: int, n: int, workers: int | None = None) -> PolygonIdentityReport:
    report = PolygonIdentityReport(dim=dim, n=n)
    if n % 2 == 0:
        report.warnings.append(f"n={n} is even: no closing walks")
        return report
    spec = EnumSpec(dim=dim, n=n, walk_class=WalkClass.CLOSING)
    table = tally(spec, key_polygon, "polygon", workers=workers)
    report.closing = table.total
    report.oriented_polygons = len(table.entries)
    if report.oriented_polygons:
        report.multiplicity = Fraction(report.closing, report.oriented_polygons)
        uneven = {v for v in table.entries.values()} - {n + 1}
        if uneven:
            report.warnings.append(f"per-polygon counts other than n+1: {sorted(uneven)}")
    return report


def hang_histogram_closing(dim: int, n: int, workers: int | None = None) -> Distribution:
    """Law of the hang index over closing walks (empty for even n)."""
    spec = EnumSpec(dim=dim, n=n, walk_class=WalkClass.CLOSING)
    if n % 2 == 0:
        return Distribution(CountTable(dim, n, WalkClass.CLOSING.value, "index"))
    return Distribution(tally(spec, key_hang, "index", workers=workers))


def is_uniform_over_indices(dist: Distribution) -> bool:
    """Every index 0..n carries the same count."""
    table = dist.table
    counts = {table.get(i) for i in range(table.n + 1)}
    return len(counts) == 1 and set(table.entries) <= set(range(table.n + 1))


def bridge_projection_distribution(
    dim: int, n: int, min_z_renewals: int | None = None, workers: int | None = None
) -> Distribution:
    """Law of pi_1(Gamma_n) under uniform bridges, optionally given |zR| >= M."""
    _require(n >= 1, f"bridge_projection_distribution needs n >= 1, got {n}")
    spec = EnumSpec(dim=dim, n=n, walk_class=WalkClass.BRIDGE)
    if min_z_renewals:
        key = partial(key_projection_if_renewed, min_z_renewals)
        return Distribution(tally(spec, key, "point", workers=workers))
    return Distribution(tally(spec, key_projection, "point", workers=workers))


def halfspace_endpoint_distribution(dim: int, n: int, workers: int | None = None) -> Distribution:
    _require(n >= 1, f"halfspace_endpoint_distribution needs n >= 1, got {n}")
    spec = EnumSpec(dim=dim, n=n, walk_class=WalkClass.HALFSPACE)
    return Distribution(tally(spec, key_endpoint, "point", workers=workers))


@dataclass
class MadrasReport:
    """Unfolding of closing walks along a direction of maximal coordinate >= 2."""

    dim: int
    n: int
    closing: int = 0
    walks: int = 0
    unfolded: int = 0
    skipped: int = 0
    max_multiplicity: int = 0
    max_image_multiplicity: int = 0
    images_far: bool = True
    images_self_avoiding: bool = True
    warnings: list[str] = field(default_factory=list)

    @property
    def closing_probability(self) -> Fraction:
        return Fraction(self.closing, self.walks) if self.walks else Fraction(0)

    @property
    def multiplicity_holds(self) -> bool:
        return self.max_multiplicity <= 2

    @property
    def bound_holds(self) -> bool:
        return self.closing_probability <= Fraction(2, 3)


def _to_first_axis(axis: int, sign: int, x: Point) -> Point:
    """Involution of Z^d exchanging sign*e_axis and e_1."""
    if axis == 1:
        return (sign * x[0],) + x[1:]
    y = list(x)
    y[0], y[axis - 1] = sign * x[axis - 1], sign * x[0]
    return tuple(y)


def _unfold_direction(w: Walk) -> tuple[int, int] | None:
    for axis in range(1, w.dim + 1):
        for sign in (1, -1):
            if max(sign * v[axis - 1] for v in w.vertices) >= 2:
                return axis, sign
    return None


def madras_unfolding_check(dim: int, n: int) -> MadrasReport:
    """Unfold every closing walk and bound the number of preimages of each image.

    For each closing walk, the first direction u in step-code order with a
    coordinate >= 2 is used; the walk is reflected at the first index of
    maximal <gamma_k | u>. Images sharing (u, image) come from at most two
    reflection levels.
    """
    report = MadrasReport(dim=dim, n=n)
    report.walks = count_class(dim, n, WalkClass.WALK, workers=1)
    per_direction: Counter[tuple[int, int, tuple[int, ...]]] = Counter()
    per_image: Counter[tuple[int, ...]] = Counter()
    for w in iter_walks(EnumSpec(dim=dim, n=n, walk_class=WalkClass.CLOSING)):
        report.closing += 1
        direction = _unfold_direction(w)
        if direction is None:
            report.skipped += 1
            continue
        axis, sign = direction
        turned = Walk.from_vertices([_to_first_axis(axis, sign, v) for v in w.vertices])
        top = max(turned.heights)
        k = turned.heights.index(top)
        image = Walk.from_vertices(
            [_to_first_axis(axis, sign, v) for v in simple_unfold(turned, k).vertices]
        )
        if len(set(image.vertices)) != len(image.vertices):
            report.images_self_avoiding = False
        if sum(abs(c) for c in image.endpoint) <= 1:
            report.images_far = False
        report.unfolded += 1
        per_direction[(axis, sign, image.codes)] += 1
        per_image[image.codes] += 1
    if per_direction:
        report.max_multiplicity = max(per_direction.values())
        report.max_image_multiplicity = max(per_image.values())
    if report.skipped:
        report.warnings.append(
            f"{report.skipped} closing walks stay inside [-1,1]^{dim}; n >= 3^d+1 avoids this"
        )
    return report
