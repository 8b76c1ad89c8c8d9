from __future__ import annotations

import math
from fractions import Fraction

import pytest

from saw_lab.config import GAUSSIAN_TOLERANCE
from saw_lab.core.errors import PatternError
from saw_lab.patterns.allocation import (
    allocation_tail,
    approximation_error,
    gaussian_T1_approx,
    hypergeom_row,
    hypergeom_T1,
    is_unimodal,
    normalization_failures,
    resample_ratio,
)


@pytest.mark.parametrize(
    "args, expected",
    [
        ((1, 1, 1, 1), Fraction(1, 2)),
        ((2, 2, 2, 1), Fraction(2, 3)),
        ((2, 2, 2, 3), Fraction(0)),
        ((3, 0, 2, 2), Fraction(1)),
    ],
)
def test_hypergeom_T1(args, expected):
    assert hypergeom_T1(*args) == expected


@pytest.mark.parametrize("s1, s2, t_one", [(3, 1, 2), (6, 4, 5), (0, 3, 2), (7, 7, 0), (5, 9, 11)])
def test_row_matches_pointwise_law(s1, s2, t_one):
    row = hypergeom_row(s1, s2, t_one)
    assert row == [hypergeom_T1(s1, s2, t_one, k) for k in range(min(s1, t_one) + 1)]
    assert sum(row) == 1
    assert is_unimodal(row)


def test_invalid_allocation():
    with pytest.raises(PatternError):
        hypergeom_T1(1, 1, 3, 0)
    with pytest.raises(PatternError):
        hypergeom_row(-1, 2, 1)


def test_normalization():
    assert normalization_failures(8) == []


def test_gaussian_peak():
    # alpha = beta = 1/2: peak is 1 / sqrt(2 pi m / 16)
    assert gaussian_T1_approx(50, 50, 50, 25) == pytest.approx(1 / math.sqrt(2 * math.pi * 100 / 16))


def test_gaussian_degenerate():
    with pytest.raises(PatternError):
        gaussian_T1_approx(0, 0, 0, 0)
    with pytest.raises(PatternError):
        gaussian_T1_approx(4, 0, 2, 1)


def test_approximation_error_is_small():
    assert approximation_error(500, 500, 500) < GAUSSIAN_TOLERANCE


@pytest.mark.slow
def test_approximation_error_at_ten_thousand_slots():
    assert approximation_error(5000, 5000, 5000) < GAUSSIAN_TOLERANCE


def test_allocation_tail():
    assert allocation_tail(2, 2, 2, 1) == Fraction(1, 3)
    assert allocation_tail(2, 2, 2, 0) == 1
    assert allocation_tail(2, 2, 2, 2) == 0


def test_resample_ratio():
    ratio = resample_ratio(100, 100, 100, 50, 55)
    assert ratio.predicted == pytest.approx(math.e)
    assert float(ratio.exact) == pytest.approx(2.696, abs=1e-3)
    assert ratio.within_factor_two


def test_resample_ratio_outside_support():
    with pytest.raises(PatternError):
        resample_ratio(2, 2, 2, 1, 3)


def test_is_unimodal():
    assert is_unimodal([1, 2, 2, 1])
    assert not is_unimodal([1, 0, 1])
