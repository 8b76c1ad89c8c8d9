"""Exact audit of multi-valued maps Phi: A -> P(B).

For b in B, Lambda(b) = sum over a with b in Phi(a) of 1/|Phi(a)|. Then
|A| = sum_b Lambda(b) <= |B| max_b Lambda(b).
"""

from __future__ import annotations

from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Generic, Hashable, TypeVar

from saw_lab.config import MVM_AUDIT_CHUNK
from saw_lab.core.errors import MVMError
from saw_lab.enumeration.engine import default_workers

A = TypeVar("A", bound=Hashable)
B = TypeVar("B", bound=Hashable)


@dataclass
class MVMInstance(Generic[A, B]):
    """A materialized map: every image set is stored."""

    name: str
    domain: list[A]
    image: dict[A, frozenset[B]]
    codomain: list[B]
    # optional claims checked by the audit
    preimage_bound: dict[B, int] | int | None = None
    expected_sizes: dict[A, int] | None = None
    expected_lambda: dict[B, Fraction] | None = None
    label: Callable[[Any], str] = str
    notes: list[str] = field(default_factory=list)


@dataclass
class AuditReport:
    name: str
    domain_size: int
    codomain_size: int
    lambda_sum: Fraction
    lambda_max: Fraction
    worst: str | None
    max_preimages: int
    bound_violations: int = 0
    size_mismatches: int = 0
    lambda_mismatches: int = 0
    warnings: list[str] = field(default_factory=list)

    @property
    def identity_holds(self) -> bool:
        return self.lambda_sum == self.domain_size

    @property
    def inequality_holds(self) -> bool:
        return self.domain_size <= self.codomain_size * self.lambda_max

    @property
    def bound_holds(self) -> bool:
        return self.bound_violations == 0

    @property
    def claims_hold(self) -> bool:
        return self.size_mismatches == 0 and self.lambda_mismatches == 0

    @property
    def passed(self) -> bool:
        return (
            self.identity_holds
            and self.inequality_holds
            and self.bound_holds
            and self.claims_hold
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "domain_size": str(self.domain_size),
            "codomain_size": str(self.codomain_size),
            "lambda_sum": str(self.lambda_sum),
            "lambda_max": str(self.lambda_max),
            "worst": self.worst,
            "max_preimages": self.max_preimages,
            "identity_holds": self.identity_holds,
            "inequality_holds": self.inequality_holds,
            "bound_holds": self.bound_holds,
            "claims_hold": self.claims_hold,
            "passed": self.passed,
            "warnings": list(self.warnings),
        }


Chunk = list[tuple[Any, frozenset | None]]


def _accumulate(
    name: str, chunk: Chunk, codomain: frozenset
) -> tuple[dict[Hashable, Fraction], dict[Hashable, int]]:
    """Partial Lambda and preimage counts over one slice of the domain."""
    lam: dict[Hashable, Fraction] = defaultdict(Fraction)
    preimages: dict[Hashable, int] = defaultdict(int)
    for a, images in chunk:
        if not images:
            raise MVMError(f"{name}: Phi({a}) is empty")
        stray = images - codomain
        if stray:
            raise MVMError(f"{name}: Phi({a}) leaves the codomain ({len(stray)} images)")
        weight = Fraction(1, len(images))
        for b in images:
            lam[b] += weight
            preimages[b] += 1
    return dict(lam), dict(preimages)


def audit_identity(
    inst: MVMInstance,
    workers: int | None = 1,
    chunk_size: int = MVM_AUDIT_CHUNK,
) -> AuditReport:
    """Compute Lambda over B exactly and check |A| = sum Lambda.

    The domain is cut into slices of ``chunk_size`` elements whose partial
    sums are merged in domain order; with ``workers`` > 1 the slices run in a
    process pool and the report is identical to the sequential one.
    """
    workers = default_workers() if workers is None else workers
    if workers < 1 or chunk_size < 1:
        raise MVMError(f"workers and chunk_size must be >= 1, got {workers}, {chunk_size}")
    codomain = frozenset(inst.codomain)
    pairs = [(a, inst.image.get(a)) for a in inst.domain]
    chunks = [pairs[i:i + chunk_size] for i in range(0, len(pairs), chunk_size)]
    if workers == 1 or len(chunks) < 2:
        parts = [_accumulate(inst.name, c, codomain) for c in chunks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(
                _accumulate, [inst.name] * len(chunks), chunks, [codomain] * len(chunks)
            ))

    lam: dict[Hashable, Fraction] = defaultdict(Fraction)
    preimages: dict[Hashable, int] = defaultdict(int)
    for part_lam, part_pre in parts:
        for b, value in part_lam.items():
            lam[b] += value
        for b, count in part_pre.items():
            preimages[b] += count

    worst = max(lam, key=lambda b: lam[b]) if lam else None
    report = AuditReport(
        name=inst.name,
        domain_size=len(inst.domain),
        codomain_size=len(inst.codomain),
        lambda_sum=sum(lam.values(), Fraction(0)),
        lambda_max=max(lam.values(), default=Fraction(0)),
        worst=inst.label(worst) if worst is not None else None,
        max_preimages=max(preimages.values(), default=0),
    )

    if inst.expected_sizes is not None:
        report.size_mismatches = sum(
            1 for a in inst.domain if len(inst.image[a]) != inst.expected_sizes.get(a)
        )
        if report.size_mismatches:
            report.warnings.append(f"{report.size_mismatches} image sets of unexpected size")
    if inst.expected_lambda is not None:
        report.lambda_mismatches = sum(
            1 for b, value in inst.expected_lambda.items() if lam.get(b, Fraction(0)) != value
        )
        if report.lambda_mismatches:
            report.warnings.append(f"{report.lambda_mismatches} contracting factors off formula")
    report.warnings.extend(inst.notes)

    bound = inst.preimage_bound
    if bound is not None:
        for b, count in preimages.items():
            limit = bound if isinstance(bound, int) else bound.get(b)
            if limit is not None and count > limit:
                report.bound_violations += 1
        if report.bound_violations:
            report.warnings.append(
                f"{report.bound_violations} images exceed their preimage bound"
            )
    if not inst.domain:
        report.warnings.append("empty domain: audit is vacuous")
    return report
