"""Exact growth-rate checks: submultiplicativity, connective-constant and
Hammersley-Welsh estimates, bridge series, z-renewal deficits and
length ratios."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial

from saw_lab.core.errors import EnumerationError
from saw_lab.enumeration.engine import EnumSpec, WalkClass, count_class, tally
from saw_lab.enumeration.keys import key_few_z_renewals


@dataclass
class AsymptoticParams:
    mu_hat: float
    c_hw_hat: float
    probe_density: float | None = None


@dataclass
class GrowthReport:
    dim: int
    n_max: int
    counts: list[int] = field(default_factory=list)
    violations: list[tuple[int, int]] = field(default_factory=list)
    params: AsymptoticParams | None = None
    warnings: list[str] = field(default_factory=list)

    @property
    def submultiplicative(self) -> bool:
        return not self.violations


def walk_counts(dim: int, n_max: int, walk_class: WalkClass = WalkClass.WALK,
                workers: int | None = None) -> list[int]:
    """[a_0, ..., a_{n_max}] for the given class."""
    return [count_class(dim, n, walk_class, workers=workers) for n in range(n_max + 1)]


def growth_checks(dim: int, n_max: int, workers: int | None = None) -> GrowthReport:
    """Check c_{n+m} <= c_n c_m for n+m <= n_max and fit mu and c_HW.

    mu_hat = c_{n_max}^{1/n_max}, an upper bound on mu_c;
    c_hw_hat = max_n log(c_n / mu_hat^n) / sqrt(n).
    """
    if n_max < 2:
        raise EnumerationError(f"growth_checks needs n_max >= 2, got {n_max}")
    report = GrowthReport(dim=dim, n_max=n_max)
    counts = walk_counts(dim, n_max, workers=workers)
    report.counts = counts

    for total in range(2, n_max + 1):
        for n in range(1, total):
            if counts[total] > counts[n] * counts[total - n]:
                report.violations.append((n, total - n))

    log_mu = math.log(counts[n_max]) / n_max
    c_hw = max(
        (math.log(counts[n]) - n * log_mu) / math.sqrt(n) for n in range(1, n_max + 1)
    )
    report.params = AsymptoticParams(mu_hat=math.exp(log_mu), c_hw_hat=max(c_hw, 0.0))
    return report


def bridge_series(dim: int, mu: float, j_max: int, workers: int | None = None) -> list[float]:
    """Partial sums sum_{j=1..J} |SAB_{2j}| mu^{-2j} for J = 1..j_max."""
    if mu <= 0:
        raise EnumerationError(f"mu must be > 0, got {mu}")
    sums: list[float] = []
    running = 0.0
    for j in range(1, j_max + 1):
        bridges = count_class(dim, 2 * j, WalkClass.BRIDGE, workers=workers)
        running += math.exp(math.log(bridges) - 2 * j * math.log(mu))
        sums.append(running)
    return sums


def z_renewal_deficit(dim: int, n: int, m: int, workers: int | None = None) -> Fraction:
    """P(|zR_Gamma| < M) under the uniform law on length-n bridges."""
    if n < 1:
        raise EnumerationError(f"z_renewal_deficit needs n >= 1, got {n}")
    if m <= 0:
        return Fraction(0)
    spec = EnumSpec(dim=dim, n=n, walk_class=WalkClass.BRIDGE)
    table = tally(spec, partial(key_few_z_renewals, m), "flag", workers=workers)
    if not table.total:
        return Fraction(0)
    return Fraction(table.get(True), table.total)


@dataclass
class LengthRatio:
    walk_class: str
    n: int
    ratio: Fraction


def length_ratio_scan(
    dim: int,
    n_max: int,
    classes: tuple[WalkClass, ...] = (WalkClass.WALK, WalkClass.BRIDGE, WalkClass.HALFSPACE),
    workers: int | None = None,
) -> list[LengthRatio]:
    """|A_{n+2}| / |A_n| for n + 2 <= n_max, per class."""
    rows: list[LengthRatio] = []
    for walk_class in classes:
        counts = walk_counts(dim, n_max, walk_class, workers=workers)
        for n in range(n_max - 1):
            if counts[n]:
                rows.append(LengthRatio(walk_class.value, n, Fraction(counts[n + 2], counts[n])))
    return rows
