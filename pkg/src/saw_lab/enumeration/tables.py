"""Exact count tables and the rational distributions derived from them."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Hashable, Iterable, Mapping


@dataclass
class CountTable:
    """Arbitrary-precision counts keyed by point, index, class or flag."""

    dim: int
    n: int
    walk_class: str
    key_kind: str = "total"
    entries: dict[Hashable, int] = field(default_factory=dict)

    @classmethod
    def from_counter(
        cls,
        counter: Mapping[Hashable, int],
        dim: int,
        n: int,
        walk_class: str,
        key_kind: str,
    ) -> CountTable:
        entries = {k: v for k, v in counter.items() if v}
        for key, value in entries.items():
            if value < 0:
                raise ValueError(f"Negative count {value} for key {key!r}")
        return cls(dim=dim, n=n, walk_class=walk_class, key_kind=key_kind, entries=entries)

    @property
    def total(self) -> int:
        return sum(self.entries.values())

    def get(self, key: Hashable) -> int:
        return self.entries.get(key, 0)

    def sorted_items(self) -> list[tuple[Hashable, int]]:
        return sorted(self.entries.items(), key=lambda kv: _sort_key(kv[0]))

    def merged(self, others: Iterable[CountTable]) -> CountTable:
        counter: Counter[Hashable] = Counter(self.entries)
        for other in others:
            counter.update(other.entries)
        return CountTable.from_counter(counter, self.dim, self.n, self.walk_class, self.key_kind)


def _sort_key(key: Any) -> tuple:
    if isinstance(key, tuple):
        return (0, key)
    if isinstance(key, bool):
        return (1, (int(key),))
    if isinstance(key, int):
        return (1, (key,))
    return (2, (str(key),))


@dataclass
class Distribution:
    """Exact law: probability of each key is count / total."""

    table: CountTable

    @property
    def total(self) -> int:
        return self.table.total

    def probability(self, key: Hashable) -> Fraction:
        total = self.total
        if total == 0:
            return Fraction(0)
        return Fraction(self.table.get(key), total)

    def probabilities(self) -> dict[Hashable, Fraction]:
        return {k: self.probability(k) for k, _ in self.table.sorted_items()}

    def sup(self) -> Fraction:
        if not self.table.entries:
            return Fraction(0)
        return Fraction(max(self.table.entries.values()), self.total)

    def argmax(self) -> list[Hashable]:
        if not self.table.entries:
            return []
        best = max(self.table.entries.values())
        return [k for k, v in self.table.sorted_items() if v == best]

    def is_normalized(self) -> bool:
        return self.total == 0 or sum(self.probabilities().values()) == 1
