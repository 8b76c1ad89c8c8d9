"""Acceptance check registry.

Each suite is a function of a :class:`VerifyContext` returning its check
results. A failed property is a FAIL result, never an exception.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from deepdiff import DeepDiff

from saw_lab.config import GAUSSIAN_TOLERANCE, VERIFY_DEFAULTS
from saw_lab.core.errors import PatternError, SawLabError
from saw_lab.core.lattice import Point
from saw_lab.core.walk import Walk
from saw_lab.enumeration.distributions import (
    closing_probability,
    endpoint_distribution,
    hang_histogram_closing,
    is_symmetric,
    is_uniform_over_indices,
    madras_unfolding_check,
    midpoint_distribution,
    polygon_identity_check,
    scaled_sup_squared,
)
from saw_lab.enumeration.engine import count_class
from saw_lab.enumeration.growth import bridge_series, growth_checks
from saw_lab.enumeration.oracle import CLASSES, oracle_counts, oracle_table
from saw_lab.mvm.audit import audit_identity
from saw_lab.mvm.maps import (
    map_insert_z,
    map_unfold_replace,
    pattern_swap_instance,
    reachable_endpoints,
    unfold_injectivity_check,
)
from saw_lab.patterns.allocation import approximation_error, normalization_failures
from saw_lab.patterns.occurrences import PatternType, embed_patterns, swap_pattern
from saw_lab.patterns.pairs import PatternPair, default_pattern_pair, validate_pattern_pair
from saw_lab.patterns.shells import partition_at_hang, shell_of
from saw_lab.verify.report import CheckResult, CheckStatus, VerifyReport, check


@dataclass
class VerifyContext:
    dim: int = 2
    # overrides every suite's default size when set
    n: int | None = None
    workers: int | None = None

    def size(self, key: str) -> int:
        return self.n if self.n is not None else VERIFY_DEFAULTS[key]

    def pattern_pair(self) -> PatternPair | None:
        try:
            return default_pattern_pair(self.dim)
        except PatternError:
            return None


def _diff_detail(diff: DeepDiff) -> str:
    parts = []
    for kind, items in diff.items():
        paths = list(items)
        parts.append(f"{kind}: {', '.join(str(p) for p in paths[:3])}")
    return "; ".join(parts)


def _endpoint_key(w: Walk) -> Point:
    return w.endpoint


def check_oracle(ctx: VerifyContext) -> list[CheckResult]:
    """Engine counts and endpoint tables against the naive oracle."""
    n_max = ctx.n if ctx.n is not None else VERIFY_DEFAULTS.get(f"oracle_n_d{ctx.dim}", 6)
    engine_rows: dict[str, dict[str, int]] = {}
    oracle_rows: dict[str, dict[str, int]] = {}
    for n in range(1, n_max + 1):
        engine_rows[f"n={n}"] = {
            c: count_class(ctx.dim, n, c, workers=ctx.workers) for c in CLASSES
        }
        oracle_rows[f"n={n}"] = oracle_counts(ctx.dim, n)
    diff = DeepDiff(oracle_rows, engine_rows)
    results = [check("oracle", "class_counts", not diff,
                     _diff_detail(diff) if diff else f"n <= {n_max}, {len(CLASSES)} classes")]

    n_table = min(n_max, 8)
    engine = endpoint_distribution(ctx.dim, n_table, workers=ctx.workers).table
    oracle = oracle_table(ctx.dim, n_table, "walk", _endpoint_key, "point")
    diff = DeepDiff(oracle.entries, engine.entries)
    results.append(check("oracle", "endpoint_table", not diff,
                         _diff_detail(diff) if diff else f"n = {n_table}"))
    return results


def check_unfold(ctx: VerifyContext) -> list[CheckResult]:
    bad = []
    n_max = ctx.size("unfold_max_n")
    for n in range(1, n_max + 1):
        report = unfold_injectivity_check(ctx.dim, n)
        if not report.passed:
            bad.append(f"n={n}: {report.collisions} collisions, "
                       f"{report.not_self_avoiding} not self-avoiding")
    return [check("unfold", "injective_self_avoiding", not bad, "; ".join(bad) or f"n <= {n_max}")]


def _odd_range(n_max: int) -> range:
    return range(3, n_max + 1, 2)


def check_hang(ctx: VerifyContext) -> list[CheckResult]:
    """Hang index uniform over closing walks; closing = (n+1) * polygons."""
    uneven, identity = [], []
    n_max = ctx.size("hang_max_odd_n")
    for n in _odd_range(n_max):
        if not is_uniform_over_indices(hang_histogram_closing(ctx.dim, n, workers=ctx.workers)):
            uneven.append(n)
        if not polygon_identity_check(ctx.dim, n, workers=ctx.workers).holds:
            identity.append(n)
    return [
        check("hang", "uniform_hang_index", not uneven, f"uneven at n={uneven}" if uneven else ""),
        check("hang", "polygon_identity", not identity,
              f"fails at n={identity}" if identity else ""),
    ]


def check_growth(ctx: VerifyContext) -> list[CheckResult]:
    n_max = ctx.size("growth_n_max")
    report = growth_checks(ctx.dim, n_max, workers=ctx.workers)
    results = [
        check("growth", "submultiplicative", report.submultiplicative,
              f"violations {report.violations[:3]}" if report.violations else ""),
    ]
    params = report.params
    results.append(check(
        "growth", "hammersley_welsh_fit", params is not None,
        f"mu_hat={params.mu_hat:.4f} c_hw_hat={params.c_hw_hat:.4f}" if params else "",
    ))
    if params is not None:
        sums = bridge_series(
            ctx.dim, params.mu_hat, min(VERIFY_DEFAULTS["bridge_series_j"], n_max // 2),
            workers=ctx.workers,
        )
        increasing = all(b > a for a, b in zip(sums, sums[1:]))
        results.append(check("growth", "bridge_series_increasing", increasing,
                             f"partial sums {[round(s, 4) for s in sums]}"))
    return results


def check_closing(ctx: VerifyContext) -> list[CheckResult]:
    """Closing probability decreasing in odd n; the unfolding bound."""
    n_max = ctx.size("closing_max_odd_n")
    probs = [closing_probability(ctx.dim, n, workers=ctx.workers) for n in _odd_range(n_max)]
    decreasing = all(b < a for a, b in zip(probs, probs[1:]))
    results = [check("closing", "closing_probability_decreasing", decreasing,
                     ", ".join(str(p) for p in probs))]
    if ctx.dim == 2 and probs:
        results.append(check("closing", "closing_probability_n3", probs[0] == Fraction(2, 9),
                             str(probs[0])))
    n = ctx.size("madras_n")
    if n < 3 ** ctx.dim + 1:
        results.append(CheckResult("closing", "unfolding_bound", CheckStatus.SKIP,
                                   f"n={n} < 3^d+1"))
        return results
    madras = madras_unfolding_check(ctx.dim, n)
    results.append(check(
        "closing", "unfolding_bound", madras.multiplicity_holds and madras.bound_holds,
        f"P(close)={madras.closing_probability} max multiplicity {madras.max_multiplicity}",
    ))
    return results


def check_delocalization(ctx: VerifyContext) -> list[CheckResult]:
    """sup endpoint probability non-increasing; sup midpoint * sqrt(n) bounded."""
    n_max = ctx.size("sup_n_max")
    ends = [endpoint_distribution(ctx.dim, n, workers=ctx.workers) for n in range(2, n_max + 1)]
    sups = [d.sup() for d in ends]
    results = [
        check("delocalization", "endpoint_sup_non_increasing",
              all(b <= a for a, b in zip(sups, sups[1:])), ", ".join(str(s) for s in sups)),
        check("delocalization", "endpoint_symmetric", all(is_symmetric(d) for d in ends)),
    ]
    n_max = ctx.size("midpoint_n_max")
    scaled = {
        n: scaled_sup_squared(midpoint_distribution(ctx.dim, n, workers=ctx.workers))
        for n in range(4, n_max + 1)
    }
    # n=4 and n=5 share the midpoint index 2; n=5 is the larger of the two
    reference = max((v for n, v in scaled.items() if n // 2 == 2), default=None)
    results.append(check(
        "delocalization", "midpoint_sup_scaled",
        reference is None or all(v <= reference for v in scaled.values()),
        f"(sup*sqrt(n))^2 over n in 4..5: {reference}" if reference is not None else "",
    ))
    return results


def check_hypergeom(ctx: VerifyContext) -> list[CheckResult]:
    limit = VERIFY_DEFAULTS["hypergeom_limit"]
    failures = normalization_failures(limit)
    half = VERIFY_DEFAULTS["hypergeom_slots"] // 2
    error = approximation_error(half, half, half)
    return [
        check("hypergeom", "normalized", not failures,
              f"{len(failures)} failures, first {failures[:3]}" if failures else f"s1,s2,tI <= {limit}"),
        check("hypergeom", "gaussian_approximation", error <= GAUSSIAN_TOLERANCE,
              f"sup error {error:.2e} at m={2 * half}"),
    ]


def _audit_check(name: str, inst, workers: int | None = 1) -> CheckResult:
    report = audit_identity(inst, workers=workers)
    detail = (f"|A|={report.domain_size} sum Lambda={report.lambda_sum} "
              f"max Lambda={report.lambda_max} max preimages={report.max_preimages}")
    return CheckResult("mvm", name, CheckStatus.PASS if report.passed else CheckStatus.FAIL,
                       detail, audit=report)


def _corpus(pp: PatternPair, slots: int = 3):
    return [
        embed_patterns(types, pp, lead=1, tail=1)
        for types in itertools.product((PatternType.I, PatternType.II), repeat=slots)
    ]


def check_mvm(ctx: VerifyContext) -> list[CheckResult]:
    n_insert = ctx.size("mvm_insert_n")
    # all j in [1, n/2]
    js = range(1, n_insert // 2 + 1)
    results = [_audit_check(
        f"insert_z_n{n_insert}",
        map_insert_z(ctx.dim, n_insert, VERIFY_DEFAULTS["mvm_insert_m"], j_range=js),
        ctx.workers,
    )]

    n_unfold = min(ctx.size("mvm_unfold_n"), VERIFY_DEFAULTS["mvm_unfold_n"])
    failed = []
    endpoints = reachable_endpoints(ctx.dim, n_unfold)
    for x in endpoints:
        result = _audit_check(f"unfold_replace_n{n_unfold}", map_unfold_replace(ctx.dim, n_unfold, x))
        if result.failed:
            failed.append(result)
    results.extend(failed)
    if not failed:
        results.append(check("mvm", f"unfold_replace_n{n_unfold}", True,
                             f"{len(endpoints)} endpoints audited"))

    pp = ctx.pattern_pair()
    if pp is None:
        results.append(CheckResult("mvm", "pattern_swap", CheckStatus.SKIP,
                                   f"no pattern pair shipped for d={ctx.dim}"))
        return results
    shells = [shell_of(w, pp) for w in _corpus(pp)]
    lengths = shells[0].member_lengths()
    for swaps in (1, 2):
        for m in lengths:
            if m + 2 * swaps in lengths:
                results.append(_audit_check(
                    f"pattern_swap_{swaps}_m{m}", pattern_swap_instance(shells, m, pp, swaps)
                ))
    return results


def check_patterns(ctx: VerifyContext) -> list[CheckResult]:
    pp = ctx.pattern_pair()
    if pp is None:
        return [CheckResult("patterns", "pair_certificate", CheckStatus.SKIP,
                            f"no pattern pair shipped for d={ctx.dim}")]
    cert = validate_pattern_pair(pp)
    results = [check("patterns", "pair_certificate", cert.valid, "; ".join(cert.messages))]

    broken = 0
    corpus = _corpus(pp)
    for w in corpus:
        shell = shell_of(w, pp)
        for length in range(1, 4):
            for slots in itertools.product(range(3), repeat=length):
                swapped = w
                for slot in slots:
                    swapped = swap_pattern(swapped, pp, slot)
                if shell_of(swapped, pp) != shell:
                    broken += 1
    results.append(check("patterns", "shell_invariance", broken == 0,
                         f"{broken} swap sequences changed the shell" if broken
                         else f"{len(corpus)} walks, 3 slots"))

    # the split of slots at the lex point is a property of the shell
    split_errors = 0
    shells = list(dict.fromkeys(shell_of(w, pp) for w in corpus))
    for shell in shells:
        layouts = set()
        for member in shell.members(pp):
            try:
                part = partition_at_hang(member, pp)
            except PatternError:
                split_errors += 1
                continue
            layouts.add((part.first, part.second))
            if part.size != len(shell.slots):
                split_errors += 1
        split_errors += len(layouts) > 1
    results.append(check("patterns", "slot_partition", split_errors == 0,
                         f"{split_errors} shells or members with an unstable split"
                         if split_errors else f"{len(shells)} shells"))
    return results


# Suite registry
SUITES: dict[str, Callable[[VerifyContext], list[CheckResult]]] = {
    "oracle": check_oracle,
    "unfold": check_unfold,
    "hang": check_hang,
    "growth": check_growth,
    "closing": check_closing,
    "delocalization": check_delocalization,
    "hypergeom": check_hypergeom,
    "mvm": check_mvm,
    "patterns": check_patterns,
}


def run_suites(names: list[str], ctx: VerifyContext) -> VerifyReport:
    """Run the named suites in registry order. Unknown names raise KeyError."""
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise KeyError(f"Unknown suite(s): {', '.join(unknown)}")
    report = VerifyReport(suites=[n for n in SUITES if n in names])
    for name in report.suites:
        try:
            report.checks.extend(SUITES[name](ctx))
        except SawLabError as e:
            report.checks.append(CheckResult(name, "error", CheckStatus.FAIL, str(e)))
    if ctx.n is not None:
        report.warnings.append(f"suite sizes overridden with n={ctx.n}")
    return report
