from __future__ import annotations

import math
from fractions import Fraction

import pytest

from saw_lab.core.errors import EnumerationError
from saw_lab.enumeration.engine import WalkClass
from saw_lab.enumeration.growth import (
    bridge_series,
    growth_checks,
    length_ratio_scan,
    walk_counts,
    z_renewal_deficit,
)

# Connective constant of the square lattice, to the digits we need here
MU_SQUARE = 2.63815853


def test_walk_counts(square_counts):
    assert walk_counts(2, 6, workers=1) == square_counts[:7]


def test_growth_checks(square_counts):
    report = growth_checks(2, 8, workers=1)
    assert report.counts == square_counts[:9]
    assert report.submultiplicative
    assert report.params.mu_hat == pytest.approx(5916 ** (1 / 8))
    assert report.params.mu_hat > MU_SQUARE
    assert report.params.c_hw_hat >= 0


def test_mu_hat_decreases_with_length():
    short = growth_checks(2, 6, workers=1).params.mu_hat
    longer = growth_checks(2, 9, workers=1).params.mu_hat
    assert MU_SQUARE < longer < short


@pytest.mark.slow
def test_mu_hat_at_sixteen_steps():
    report = growth_checks(2, 16)
    assert report.submultiplicative
    assert report.params.mu_hat == pytest.approx(2.833, abs=1e-3)


def test_growth_needs_two_lengths():
    with pytest.raises(EnumerationError):
        growth_checks(2, 1)


def test_bridge_series():
    sums = bridge_series(2, MU_SQUARE, 3, workers=1)
    assert len(sums) == 3
    assert sums[0] == pytest.approx(3 / MU_SQUARE ** 2)
    assert sums == sorted(sums)


def test_bridge_series_rejects_bad_mu():
    with pytest.raises(EnumerationError):
        bridge_series(2, 0.0, 2)


def test_z_renewal_deficit():
    assert z_renewal_deficit(2, 1, 1, workers=1) == 1
    assert z_renewal_deficit(2, 3, 0, workers=1) == 0
    deficit = z_renewal_deficit(2, 5, 1, workers=1)
    assert 0 < deficit < 1
    with pytest.raises(EnumerationError):
        z_renewal_deficit(2, 0, 1)


@pytest.mark.slow
def test_deficit_without_renewals_decreases():
    deficits = [z_renewal_deficit(2, n, 1) for n in range(4, 15)]
    assert all(b <= a for a, b in zip(deficits, deficits[1:]))


def test_length_ratio_scan():
    rows = length_ratio_scan(2, 4, classes=(WalkClass.WALK,), workers=1)
    assert [(r.n, r.ratio) for r in rows] == [
        (0, Fraction(12)),
        (1, Fraction(9)),
        (2, Fraction(25, 3)),
    ]
    assert all(r.walk_class == "walk" for r in rows)


def test_ratios_approach_mu_squared():
    rows = length_ratio_scan(2, 10, classes=(WalkClass.WALK,), workers=1)
    assert math.sqrt(rows[-1].ratio) == pytest.approx(MU_SQUARE, rel=0.05)
