"""Concrete multi-valued maps: z-connector insertion, unfold-and-replace,
and pattern swaps. Walks are carried as step-code tuples from the origin."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from saw_lab.core.errors import MVMError
from saw_lab.core.lattice import Point, Step, add, project_h, sub
from saw_lab.core.walk import (
    Walk,
    is_self_avoiding,
    renewal_times_from_heights,
    unfold,
    z_renewal_times_from_heights,
)
from saw_lab.enumeration.engine import EnumSpec, WalkClass, count_class, iter_walks
from saw_lab.mvm.audit import MVMInstance
from saw_lab.patterns.occurrences import PatternType, find_occurrences, pattern_counts
from saw_lab.patterns.pairs import PatternPair
from saw_lab.patterns.shells import Shell

Codes = tuple[int, ...]

# +e_1 then +e_2
_Z_CONNECTOR: Codes = (Step(1, 1).code, Step(2, 1).code)


@lru_cache(maxsize=64)
def _class_codes(dim: int, n: int, walk_class: WalkClass) -> tuple[Codes, ...]:
    return tuple(w.codes for w in iter_walks(EnumSpec(dim=dim, n=n, walk_class=walk_class)))


def _vertices(dim: int, codes: Codes) -> tuple[Point, ...]:
    return Walk.from_codes(dim, codes).vertices


def _labeller(dim: int):
    def label(codes: Codes) -> str:
        return str(Walk.from_codes(dim, codes))

    return label


def fifth_root_floor(n: int) -> int:
    """Largest k with k^5 <= n."""
    k = 0
    while (k + 1) ** 5 <= n:
        k += 1
    return k


def map_insert_z(
    dim: int, n: int, m: int, j_range: Iterable[int] | None = None
) -> MVMInstance:
    """(g1, g2) -> g1 + [+e_1, +e_2] + g2 for g1 in SAB^M_{n-2j}, g2 in SAB_{2j-2}.

    SAB^M_k is the set of length-k bridges with fewer than M z-renewal times.
    Every image is a length-n bridge with at most M preimages.
    """
    if m < 0:
        raise MVMError(f"M must be >= 0, got {m}")
    js = list(j_range) if j_range is not None else list(range(1, fifth_root_floor(n) + 1))
    if any(j < 1 or 2 * j > n for j in js):
        raise MVMError(f"j_range {js} must lie in [1, n/2]")

    domain: list[tuple[Codes, Codes]] = []
    image: dict[tuple[Codes, Codes], frozenset[Codes]] = {}
    for j in js:
        heads = [
            c for c in _class_codes(dim, n - 2 * j, WalkClass.BRIDGE)
            if len(z_renewal_times_from_heights([v[0] for v in _vertices(dim, c)])) < m
        ]
        tails = _class_codes(dim, 2 * j - 2, WalkClass.BRIDGE)
        for head, tail in itertools.product(heads, tails):
            pair = (head, tail)
            domain.append(pair)
            image[pair] = frozenset({head + _Z_CONNECTOR + tail})

    return MVMInstance(
        name="insert_z",
        domain=domain,
        image=image,
        codomain=list(_class_codes(dim, n, WalkClass.BRIDGE)),
        preimage_bound=m,
        label=_labeller(dim),
        notes=[f"j in {js}"],
    )


def _last_renewal(codes: Codes, dim: int) -> int:
    return renewal_times_from_heights([v[0] for v in _vertices(dim, codes)])[-1]


@lru_cache(maxsize=64)
def _bridge_projection_counts(dim: int, n: int) -> Counter:
    counter: Counter[Point] = Counter()
    for codes in _class_codes(dim, n, WalkClass.BRIDGE):
        counter[project_h(_vertices(dim, codes)[-1])] += 1
    return counter


def map_unfold_replace(dim: int, n: int, x: Point) -> MVMInstance:
    """Half-space walks ending at x -> SAHSW_{n+1}.

    For gamma, let ren be the last renewal time of Unf(gamma); Phi(gamma) is
    every bridge of length ren followed by Unf(gamma)[ren, n+1]. Both
    counting claims are audited: |Phi(gamma)| = |SAB_ren|, and
    |Phi^{-1}(b)| <= #{chi in SAB_ren(b) : pi_1(chi_end) = pi_1(x + b_ren - b_{n+1})}.
    """
    if len(x) != dim:
        raise MVMError(f"Endpoint {x} is not in dimension {dim}")
    spec = EnumSpec(dim=dim, n=n, walk_class=WalkClass.HALFSPACE, endpoint=x)
    domain = [w.codes for w in iter_walks(spec)]
    image: dict[Codes, frozenset[Codes]] = {}
    sizes: dict[Codes, int] = {}
    # |SAB_ren| counted by the engine, independently of the image sets
    bridge_totals: dict[int, int] = {}
    for codes in domain:
        unfolded = unfold(Walk.from_codes(dim, codes)).codes
        ren = _last_renewal(unfolded, dim)
        tail = unfolded[ren:]
        bridges = _class_codes(dim, ren, WalkClass.BRIDGE)
        image[codes] = frozenset(head + tail for head in bridges)
        if ren not in bridge_totals:
            bridge_totals[ren] = count_class(dim, ren, WalkClass.BRIDGE, workers=1)
        sizes[codes] = bridge_totals[ren]

    bound: dict[Codes, int] = {}
    for images in image.values():
        for b in images:
            if b in bound:
                continue
            vertices = _vertices(dim, b)
            ren = _last_renewal(b, dim)
            target = project_h(add(x, sub(vertices[ren], vertices[-1])))
            bound[b] = _bridge_projection_counts(dim, ren).get(target, 0)

    return MVMInstance(
        name="unfold_replace",
        domain=domain,
        image=image,
        codomain=list(_class_codes(dim, n + 1, WalkClass.HALFSPACE)),
        preimage_bound=bound,
        expected_sizes=sizes,
        label=_labeller(dim),
    )


def reachable_endpoints(dim: int, n: int) -> list[Point]:
    """Endpoints of length-n half-space walks, sorted."""
    spec = EnumSpec(dim=dim, n=n, walk_class=WalkClass.HALFSPACE)
    return sorted({w.endpoint for w in iter_walks(spec)})


@dataclass
class UnfoldReport:
    dim: int
    n: int
    walks: int = 0
    endpoints: int = 0
    collisions: int = 0
    not_self_avoiding: int = 0
    warnings: list[str] = field(default_factory=list)

    @property
    def injective(self) -> bool:
        return self.collisions == 0

    @property
    def passed(self) -> bool:
        return self.injective and self.not_self_avoiding == 0


def unfold_injectivity_check(dim: int, n: int) -> UnfoldReport:
    """Unf is self-avoiding of length n+1 and injective on each {gamma_n = x}."""
    report = UnfoldReport(dim=dim, n=n)
    by_endpoint: dict[Point, set[Codes]] = {}
    for w in iter_walks(EnumSpec(dim=dim, n=n, walk_class=WalkClass.HALFSPACE)):
        report.walks += 1
        u = unfold(w)
        if u.n != n + 1 or not is_self_avoiding(u):
            report.not_self_avoiding += 1
        seen = by_endpoint.setdefault(w.endpoint, set())
        if u.codes in seen:
            report.collisions += 1
        seen.add(u.codes)
    report.endpoints = len(by_endpoint)
    return report


def _shell_members(shells: Sequence[Shell], pp: PatternPair, length: int) -> list[Walk]:
    members: list[Walk] = []
    for shell in dict.fromkeys(shells):
        members.extend(w for w in shell.members(pp) if w.n == length)
    return members


def _swap_down(w: Walk, pp: PatternPair, slots: Sequence[int]) -> Walk:
    """Turn the type II patterns at ``slots`` into type I (slot order preserved)."""
    occurrences = find_occurrences(w, pp)
    steps = list(w.steps)
    # right to left keeps earlier indices valid
    for slot in sorted(slots, reverse=True):
        occ = occurrences[slot]
        steps[occ.index:occ.end] = pp.type_one.steps
    return Walk(w.dim, w.origin, tuple(steps))


def pattern_swap_instance(
    shells: Sequence[Shell], m: int, pp: PatternPair, swaps: int = 1
) -> MVMInstance:
    """A_{m+2s} -> A_m replacing s type II patterns by type I ones.

    A_k is the set of length-k members of the given shells; the domain keeps
    walks holding at least s type II patterns. Lambda(gamma) must equal
    C(T_I, s) / C(T_II + s, s).
    """
    if swaps not in (1, 2):
        raise MVMError(f"swaps must be 1 or 2, got {swaps}")
    domain: list[Walk] = []
    image: dict[Walk, frozenset[Walk]] = {}
    for b in _shell_members(shells, pp, m + 2 * swaps):
        occurrences = find_occurrences(b, pp)
        type_two = [i for i, o in enumerate(occurrences) if o.pattern_type is PatternType.II]
        if len(type_two) < swaps:
            continue
        domain.append(b)
        image[b] = frozenset(
            _swap_down(b, pp, chosen) for chosen in itertools.combinations(type_two, swaps)
        )

    codomain = _shell_members(shells, pp, m)
    expected: dict[Walk, Fraction] = {}
    for g in codomain:
        t_one, t_two = pattern_counts(find_occurrences(g, pp))
        expected[g] = Fraction(comb(t_one, swaps), comb(t_two + swaps, swaps))

    return MVMInstance(
        name=f"pattern_swap_{swaps}",
        domain=domain,
        image=image,
        codomain=codomain,
        expected_lambda=expected,
        label=str,
    )
