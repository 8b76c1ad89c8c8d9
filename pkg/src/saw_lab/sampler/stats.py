"""Statistics over pivot-chain samples: mean-square displacement ladder,
exponent fit with bootstrap error, probe-motif density and empirical
endpoint laws."""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from saw_lab.config import (
    BOOTSTRAP_RESAMPLES,
    DEFAULT_PROBE_MOTIF,
    ENDPOINT_HISTOGRAM_BINS,
    MIN_FIT_SAMPLES,
)
from saw_lab.core.errors import SamplerError
from saw_lab.core.lattice import Point
from saw_lab.enumeration.tables import Distribution
from saw_lab.sampler.pivot import PivotChain, PivotConfig

StateHook = Callable[[int, np.ndarray], None]


@dataclass
class LadderPoint:
    dim: int
    n: int
    samples: int
    msd_mean: float
    msd_stderr: float
    acceptance_rate: float
    probe_density: float
    histogram: list[int]
    histogram_edges: list[float]

    @property
    def madras_bound(self) -> float:
        """n^{4/(3d)} lower bound on the mean-square displacement."""
        return self.n ** (4 / (3 * self.dim))

    @property
    def madras_holds(self) -> bool:
        return self.msd_mean >= self.madras_bound

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "samples": self.samples,
            "msd_mean": self.msd_mean,
            "msd_stderr": self.msd_stderr,
            "acceptance_rate": self.acceptance_rate,
            "probe_density": self.probe_density,
            "madras_bound": self.madras_bound,
            "madras_holds": self.madras_holds,
            "histogram": {"counts": self.histogram, "edges": self.histogram_edges},
        }


@dataclass
class SampleStats:
    dim: int
    seed: int
    probe: tuple[int, ...]
    points: list[LadderPoint] = field(default_factory=list)
    two_nu: float | None = None
    two_nu_error: float | None = None
    two_nu_interval: tuple[float, float] | None = None
    warnings: list[str] = field(default_factory=list)

    @property
    def nu(self) -> float | None:
        return None if self.two_nu is None else self.two_nu / 2

    @property
    def madras_holds(self) -> bool:
        return all(p.madras_holds for p in self.points)

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "seed": self.seed,
            "probe": list(self.probe),
            "points": [p.to_dict() for p in self.points],
            "two_nu": self.two_nu,
            "two_nu_error": self.two_nu_error,
            "two_nu_interval": list(self.two_nu_interval) if self.two_nu_interval else None,
            "madras_holds": self.madras_holds,
            "warnings": list(self.warnings),
        }


def step_codes(coords: np.ndarray) -> np.ndarray:
    """Step codes 2*axis + (1 if negative) of an (n+1, d) vertex array."""
    diff = np.diff(coords, axis=0)
    axis = np.argmax(np.abs(diff), axis=1)
    negative = diff[np.arange(len(diff)), axis] < 0
    return 2 * axis + negative.astype(np.int64)


def motif_count(codes: np.ndarray, motif: Sequence[int]) -> int:
    """Windows of ``codes`` equal to ``motif`` (overlaps counted)."""
    k = len(motif)
    if k == 0 or len(codes) < k:
        return 0
    windows = np.lib.stride_tricks.sliding_window_view(codes, k)
    return int(np.all(windows == np.asarray(motif), axis=1).sum())


def _run_point(
    cfg: PivotConfig,
    seed_seq: np.random.SeedSequence,
    probe: tuple[int, ...],
    on_state: StateHook | None = None,
) -> tuple[np.ndarray, np.ndarray, float]:
    chain = PivotChain(cfg, rng=np.random.default_rng(seed_seq))
    sq_norms = np.empty(cfg.samples, dtype=np.float64)
    probes = np.empty(cfg.samples, dtype=np.int64)
    for i, coords in enumerate(chain.states()):
        end = coords[-1]
        sq_norms[i] = float(end @ end)
        probes[i] = motif_count(step_codes(coords), probe)
        if on_state is not None:
            on_state(cfg.n, coords)
    return sq_norms, probes, chain.acceptance_rate


def _summarize(
    dim: int, n: int, sq_norms: np.ndarray, probes: np.ndarray, acceptance: float
) -> LadderPoint:
    counts, edges = np.histogram(np.sqrt(sq_norms), bins=ENDPOINT_HISTOGRAM_BINS, range=(0, n))
    samples = len(sq_norms)
    stderr = float(sq_norms.std(ddof=1) / math.sqrt(samples)) if samples > 1 else 0.0
    return LadderPoint(
        dim=dim,
        n=n,
        samples=samples,
        msd_mean=float(sq_norms.mean()),
        msd_stderr=stderr,
        acceptance_rate=acceptance,
        probe_density=float(probes.mean() / n),
        histogram=[int(c) for c in counts],
        histogram_edges=[float(e) for e in edges],
    )


def _fit_slope(ns: Sequence[int], msds: Sequence[float]) -> float:
    slope, _ = np.polyfit(np.log(ns), np.log(msds), 1)
    return float(slope)


def estimate_exponents(
    cfg: PivotConfig,
    ladder: Iterable[int] | None = None,
    probe: Sequence[int] = DEFAULT_PROBE_MOTIF,
    bootstrap: int = BOOTSTRAP_RESAMPLES,
    on_state: StateHook | None = None,
    workers: int = 1,
) -> SampleStats:
    """Fit log E|Gamma_n|^2 against log n over a ladder of lengths.

    Each ladder length runs its own chain seeded from a child of
    ``SeedSequence(cfg.seed)``; the bootstrap draws from the last child, so
    results depend on the seed and ladder only, never on ``workers``. The
    ladder defaults to ``(cfg.n,)``.
    """
    ns = sorted(set(ladder)) if ladder is not None else [cfg.n]
    if not ns or ns[0] < 1:
        raise SamplerError(f"Ladder lengths must be >= 1, got {ns}")
    if bootstrap < 0:
        raise SamplerError("bootstrap must be >= 0")
    probe = tuple(probe)
    children = np.random.SeedSequence(cfg.seed).spawn(len(ns) + 1)
    configs = [replace(cfg, n=n) for n in ns]

    if workers > 1 and on_state is None and len(ns) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            runs = list(pool.map(_run_point, configs, children[:-1], [probe] * len(ns)))
    else:
        runs = [
            _run_point(c, s, probe, on_state) for c, s in zip(configs, children[:-1])
        ]

    stats = SampleStats(dim=cfg.dim, seed=cfg.seed, probe=probe)
    for c, (sq_norms, probes, acceptance) in zip(configs, runs):
        stats.points.append(_summarize(c.dim, c.n, sq_norms, probes, acceptance))

    if cfg.samples < MIN_FIT_SAMPLES:
        stats.warnings.append(
            f"insufficient samples for fit: {cfg.samples} < {MIN_FIT_SAMPLES} per length"
        )
    if len(ns) < 2:
        stats.warnings.append("fewer than 2 ladder lengths: exponent not fitted")
        return stats
    if any(p.msd_mean <= 0 for p in stats.points):
        stats.warnings.append("zero mean-square displacement: exponent not fitted")
        return stats

    stats.two_nu = _fit_slope(ns, [p.msd_mean for p in stats.points])
    if bootstrap == 0:
        stats.warnings.append("bootstrap skipped")
        return stats

    rng = np.random.default_rng(children[-1])
    slopes = np.empty(bootstrap)
    for b in range(bootstrap):
        msds = [
            sq_norms[rng.integers(0, len(sq_norms), len(sq_norms))].mean()
            for sq_norms, _, _ in runs
        ]
        slopes[b] = _fit_slope(ns, msds)
    stats.two_nu_error = float(slopes.std(ddof=1)) if bootstrap > 1 else 0.0
    low, high = np.percentile(slopes, [2.5, 97.5])
    stats.two_nu_interval = (float(low), float(high))
    return stats


def endpoint_law(endpoints: Iterable[Point]) -> dict[Point, float]:
    """Empirical law of a stream of endpoints."""
    counter = Counter(endpoints)
    total = sum(counter.values())
    if total == 0:
        return {}
    return {x: c / total for x, c in sorted(counter.items())}


def empirical_endpoint_law(cfg: PivotConfig) -> dict[Point, float]:
    chain = PivotChain(cfg)
    return endpoint_law(tuple(int(c) for c in coords[-1]) for coords in chain.states())


def total_variation(empirical: Mapping[Point, float], exact: Distribution) -> float:
    """(1/2) sum_x |P_emp(x) - P(x)| over the union of supports."""
    exact_probs: dict[Point, Fraction] = exact.probabilities()
    keys = set(empirical) | set(exact_probs)
    return 0.5 * sum(
        abs(empirical.get(x, 0.0) - float(exact_probs.get(x, Fraction(0)))) for x in keys
    )
