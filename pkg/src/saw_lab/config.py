"""Default engine, sampler and CLI settings."""

from __future__ import annotations

# Prefix depth at which the enumeration tree is cut into independent subtrees
DEFAULT_SPLIT_DEPTH = 6

# Largest n accepted per (dim, class) without --force
FEASIBLE_N: dict[int, dict[str, int]] = {
    2: {"walk": 16, "bridge": 20, "halfspace": 18, "closing": 19},
    3: {"walk": 10, "bridge": 12, "halfspace": 11, "closing": 13},
    4: {"walk": 8, "bridge": 9, "halfspace": 9, "closing": 10},
}
# Fallback for dimensions not in the table
FEASIBLE_N_DEFAULT = 6

# Exact sizes used by the default verification suites
VERIFY_DEFAULTS: dict[str, int] = {
    "oracle_n_d2": 12,
    "oracle_n_d3": 8,
    "hang_max_odd_n": 13,
    "unfold_max_n": 8,
    "growth_n_max": 16,
    "mvm_insert_n": 10,
    "mvm_insert_m": 2,
    "mvm_unfold_n": 8,
    "hypergeom_limit": 60,
    "hypergeom_slots": 10_000,
    "closing_max_odd_n": 15,
    "sup_n_max": 16,
    "midpoint_n_max": 16,
    "bridge_series_j": 7,
    "madras_n": 11,
}

# Domain elements per slice when an MVM audit runs in a process pool
MVM_AUDIT_CHUNK = 2000

# Largest sup-error tolerated between the allocation law and its Gaussian form
GAUSSIAN_TOLERANCE = 1e-2

# Pivot sampler defaults (multiples of n)
WARMUP_FACTOR = 10
THINNING_DIVISOR = 10

# Probe motif for the empirical pattern density: two consecutive +e_1 steps
DEFAULT_PROBE_MOTIF: tuple[int, ...] = (0, 0)

DEFAULT_LADDER: tuple[int, ...] = (200, 400, 800, 1600)
DEFAULT_SAMPLES = 10_000
MIN_FIT_SAMPLES = 100
BOOTSTRAP_RESAMPLES = 200
ENDPOINT_HISTOGRAM_BINS = 10

# Bumped whenever a report schema changes shape
SCHEMA_VERSION = 1
