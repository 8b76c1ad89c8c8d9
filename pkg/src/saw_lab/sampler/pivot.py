"""Pivot-algorithm Markov chain on fixed-length self-avoiding walks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from saw_lab.config import THINNING_DIVISOR, WARMUP_FACTOR
from saw_lab.core.errors import SamplerError
from saw_lab.core.lattice import symmetries
from saw_lab.core.walk import Walk


@dataclass(frozen=True)
class PivotConfig:
    dim: int
    n: int
    seed: int = 0
    warmup_pivots: int | None = None
    samples: int = 1000
    thinning: int | None = None

    def __post_init__(self) -> None:
        if self.dim < 2:
            raise SamplerError(f"dim must be >= 2, got {self.dim}")
        if self.n < 1:
            raise SamplerError(f"n must be >= 1, got {self.n}")
        if self.samples < 1:
            raise SamplerError(f"samples must be >= 1, got {self.samples}")
        if self.warmup_pivots is not None and self.warmup_pivots < 0:
            raise SamplerError("warmup_pivots must be >= 0")
        if self.thinning is not None and self.thinning < 1:
            raise SamplerError("thinning must be >= 1")

    @property
    def warmup(self) -> int:
        """Accepted pivots before the first emitted state (default 10 n)."""
        return WARMUP_FACTOR * self.n if self.warmup_pivots is None else self.warmup_pivots

    @property
    def thin(self) -> int:
        """Proposals between emitted states (default n / 10)."""
        return max(1, self.n // THINNING_DIVISOR) if self.thinning is None else self.thinning


def symmetry_matrices(dim: int) -> np.ndarray:
    """Signed permutation matrices of every non-identity lattice symmetry, shape (g, d, d)."""
    mats = []
    for sym in symmetries(dim, include_identity=False):
        mat = np.zeros((dim, dim), dtype=np.int64)
        for i, (p, s) in enumerate(zip(sym.perm, sym.signs)):
            mat[i, p] = s
        mats.append(mat)
    return np.stack(mats)


class PivotChain:
    """State: an (n+1, d) integer array of vertices starting at 0.

    A proposal picks a site k uniform in [0, n-1] and a non-identity
    symmetry g, and maps gamma[k+1..n] to gamma_k + g(gamma_i - gamma_k).
    It is accepted iff the result is self-avoiding.
    """

    def __init__(self, cfg: PivotConfig, rng: np.random.Generator | None = None) -> None:
        self.cfg = cfg
        self.rng = rng if rng is not None else np.random.default_rng(cfg.seed)
        self.mats = symmetry_matrices(cfg.dim)
        self.coords = np.zeros((cfg.n + 1, cfg.dim), dtype=np.int64)
        self.coords[:, 0] = np.arange(cfg.n + 1)
        self.proposals = 0
        self.accepted = 0
        self._radix = 2 * cfg.n + 1
        self._weights = self._radix ** np.arange(cfg.dim, dtype=np.int64)

    def _self_avoiding(self, coords: np.ndarray) -> bool:
        keys = (coords + self.cfg.n) @ self._weights
        return np.unique(keys).size == keys.size

    def propose(self) -> bool:
        n = self.cfg.n
        site = int(self.rng.integers(0, n))
        mat = self.mats[int(self.rng.integers(0, len(self.mats)))]
        self.proposals += 1
        pivot = self.coords[site]
        candidate = self.coords.copy()
        candidate[site + 1:] = (self.coords[site + 1:] - pivot) @ mat.T + pivot
        if not self._self_avoiding(candidate):
            return False
        self.coords = candidate
        self.accepted += 1
        return True

    def warm_up(self) -> None:
        target = self.accepted + self.cfg.warmup
        while self.accepted < target:
            self.propose()

    def states(self) -> Iterator[np.ndarray]:
        """Warm up, then yield a copy of the state every ``thin`` proposals."""
        self.warm_up()
        for _ in range(self.cfg.samples):
            for _ in range(self.cfg.thin):
                self.propose()
            yield self.coords.copy()

    @property
    def acceptance_rate(self) -> float:
        return self.accepted / self.proposals if self.proposals else 0.0


def coords_to_walk(coords: np.ndarray) -> Walk:
    return Walk.from_vertices([tuple(int(c) for c in row) for row in coords])


def pivot_sample(cfg: PivotConfig) -> Iterator[Walk]:
    """Seeded stream of ``cfg.samples`` walks from the pivot chain."""
    chain = PivotChain(cfg)
    for coords in chain.states():
        yield coords_to_walk(coords)
