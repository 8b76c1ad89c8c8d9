"""Law of the number of type I patterns allocated to the first slot group.

Given a shell with s1 + s2 slots holding tI type I patterns, the type I
patterns are uniform over slots, so T_I^1 is hypergeometric.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from saw_lab.core.errors import PatternError


def _check_args(s1: int, s2: int, t_one: int) -> None:
    if min(s1, s2, t_one) < 0 or t_one > s1 + s2:
        raise PatternError(f"Invalid allocation (s1={s1}, s2={s2}, tI={t_one})")


def hypergeom_T1(s1: int, s2: int, t_one: int, k: int) -> Fraction:
    """C(s1,k) C(s2,tI-k) / C(s1+s2,tI); zero outside the support."""
    _check_args(s1, s2, t_one)
    if not 0 <= k <= min(s1, t_one) or t_one - k > s2:
        return Fraction(0)
    return Fraction(math.comb(s1, k) * math.comb(s2, t_one - k), math.comb(s1 + s2, t_one))


def hypergeom_row(s1: int, s2: int, t_one: int) -> list[Fraction]:
    """[P(T_I^1 = k) for k in 0..min(s1, tI)], built by binomial recurrences."""
    _check_args(s1, s2, t_one)
    total = math.comb(s1 + s2, t_one)
    top = min(s1, t_one)
    row: list[Fraction] = []
    left = 1
    right = math.comb(s2, t_one) if t_one <= s2 else 0
    for k in range(top + 1):
        row.append(Fraction(left * right, total))
        # C(s1,k) -> C(s1,k+1), C(s2,tI-k) -> C(s2,tI-k-1)
        left = left * (s1 - k) // (k + 1)
        j = t_one - k
        if right:
            right = right * j // (s2 - j + 1)
        elif j - 1 <= s2:
            right = math.comb(s2, j - 1)
    return row


def gaussian_T1_approx(s1: int, s2: int, t_one: int, k: int) -> float:
    """Local Gaussian approximation of P(T_I^1 = k).

    With m = s1+s2, alpha = s1/m, beta = tI/m and z = k/(alpha beta m) - 1:
    exp(-alpha beta m z^2 / (2 (1-alpha)(1-beta))) / sqrt(2 pi alpha beta (1-alpha)(1-beta) m).
    """
    m = s1 + s2
    if m == 0:
        raise PatternError("No slots")
    alpha = s1 / m
    beta = t_one / m
    if not (0 < alpha < 1 and 0 < beta < 1):
        raise PatternError(f"Degenerate allocation: alpha={alpha}, beta={beta}")
    z = k / (alpha * beta * m) - 1
    spread = (1 - alpha) * (1 - beta)
    return math.exp(-alpha * beta * m * z * z / (2 * spread)) / math.sqrt(
        2 * math.pi * alpha * beta * spread * m
    )


def approximation_error(s1: int, s2: int, t_one: int) -> float:
    """sup_k |P(T_I^1 = k) - gaussian_T1_approx(k)| over the support."""
    row = hypergeom_row(s1, s2, t_one)
    return max(
        abs(float(p) - gaussian_T1_approx(s1, s2, t_one, k)) for k, p in enumerate(row)
    )


def allocation_tail(s1: int, s2: int, t_one: int, t: Fraction | int) -> Fraction:
    """P(|T_I^1 - tI s1/(s1+s2)| >= t), exact."""
    _check_args(s1, s2, t_one)
    if t <= 0:
        return Fraction(1)
    m = s1 + s2
    mean = Fraction(t_one * s1, m) if m else Fraction(0)
    return sum(
        (p for k, p in enumerate(hypergeom_row(s1, s2, t_one)) if abs(k - mean) >= t),
        Fraction(0),
    )


@dataclass(frozen=True)
class ResampleRatio:
    k_one: int
    k_two: int
    exact: Fraction
    predicted: float

    @property
    def within_factor_two(self) -> bool:
        return float(self.exact) >= self.predicted / 2


def resample_ratio(s1: int, s2: int, t_one: int, k_one: int, k_two: int) -> ResampleRatio:
    """P(T_I^1 = k1) / P(T_I^1 = k2), exact and as predicted by the Gaussian approximation."""
    denominator = hypergeom_T1(s1, s2, t_one, k_two)
    if denominator == 0:
        raise PatternError(f"k2={k_two} outside the support")
    return ResampleRatio(
        k_one=k_one,
        k_two=k_two,
        exact=hypergeom_T1(s1, s2, t_one, k_one) / denominator,
        predicted=gaussian_T1_approx(s1, s2, t_one, k_one)
        / gaussian_T1_approx(s1, s2, t_one, k_two),
    )


def is_unimodal(row: list[Fraction]) -> bool:
    """Non-decreasing then non-increasing."""
    i = 0
    while i + 1 < len(row) and row[i + 1] >= row[i]:
        i += 1
    return all(row[j + 1] <= row[j] for j in range(i, len(row) - 1))


def normalization_failures(limit: int) -> list[tuple[int, int, int]]:
    """(s1, s2, tI) with s1, s2, tI <= limit whose law does not sum to 1.

    Sums sum_k C(s1,k) C(s2,tI-k) against C(s1+s2,tI) in integers.
    """
    size = 2 * limit + 1
    pascal: list[list[int]] = [[1]]
    for r in range(1, size):
        prev = pascal[-1]
        pascal.append([1] + [prev[i] + prev[i + 1] for i in range(r - 1)] + [1])

    def binom(r: int, c: int) -> int:
        return pascal[r][c] if 0 <= c <= r else 0

    failures: list[tuple[int, int, int]] = []
    for s1 in range(limit + 1):
        for s2 in range(limit + 1):
            for t_one in range(min(limit, s1 + s2) + 1):
                total = sum(
                    binom(s1, k) * binom(s2, t_one - k) for k in range(min(s1, t_one) + 1)
                )
                if total != binom(s1 + s2, t_one):
                    failures.append((s1, s2, t_one))
    return failures
