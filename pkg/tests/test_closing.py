from __future__ import annotations

from fractions import Fraction

import pytest

from saw_lab.core.errors import WalkError
from saw_lab.core.walk import classify, hang_time
from saw_lab.enumeration.closing import closing_score, hang_segment, ticked_indices
from saw_lab.enumeration.oracle import oracle_walks


def test_closing_score(walk):
    # completions of +1 keeping (1,0) maximal: -2,-1 (closes) and -2,-2
    assert closing_score(walk("+1"), n_total=3) == Fraction(1, 2)


def test_closing_score_is_translation_invariant(walk):
    moved = walk("+1").translate((4, -2))
    assert closing_score(moved, n_total=3) == Fraction(1, 2)


def test_closing_score_even_length(walk):
    assert closing_score(walk("+1"), n_total=4) == 0


def test_closing_score_needs_hang_at_end(walk):
    with pytest.raises(WalkError):
        closing_score(walk("+1,-2"), n_total=3)


def test_closing_score_too_long(walk):
    with pytest.raises(WalkError):
        closing_score(walk("+1,+1"), n_total=1)


def test_hang_segment(square):
    assert hang_segment(square, 0).vertices == ((1, 1),)
    assert hang_segment(square, 2).vertices == ((0, 0), (1, 0), (1, 1))
    assert hang_segment(square, 1).vertices == ((1, 0), (1, 1))


def test_ticked_indices(square):
    assert ticked_indices(square, 3, Fraction(2)) == []
    ticked = ticked_indices(square, 3, Fraction(0))
    assert ticked == sorted(ticked)
    assert 2 in ticked


def oracle_score(segment, n_total):
    """Closing fraction among all length-n_total walks extending segment with hang at its end."""
    prefix = segment.at_origin().vertices
    completions = [
        w for w in oracle_walks(segment.dim, n_total)
        if w.vertices[: len(prefix)] == prefix and hang_time(w) == segment.n
    ]
    if not completions:
        return None
    return Fraction(sum(classify(w).closing for w in completions), len(completions))


@pytest.mark.parametrize("threshold", [Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(1)])
def test_ticked_indices_match_oracle(square, threshold):
    expected = []
    for length in range(min(square.n, 3) + 1):
        score = oracle_score(hang_segment(square, length), 3)
        if score is not None and score >= threshold:
            expected.append(length)
    assert ticked_indices(square, 3, threshold) == expected


def test_ticked_indices_of_the_unit_square(square):
    assert ticked_indices(square, 3, Fraction(1, 2)) == [2, 3]


def test_ticked_indices_needs_closing_walk(walk):
    with pytest.raises(WalkError):
        ticked_indices(walk("+1,+1"), 3, Fraction(1, 2))
