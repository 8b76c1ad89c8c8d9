"""Closing scores of prefixes ending at their lex point, and ticked indices."""

from __future__ import annotations

from fractions import Fraction

from saw_lab.core.errors import WalkError
from saw_lab.core.walk import Walk, classify, cyclic_shift, hang_time
from saw_lab.enumeration.engine import EnumSpec, WalkClass, tally
from saw_lab.enumeration.keys import key_closes


def closing_score(gamma: Walk, n_total: int, workers: int | None = 1) -> Fraction | None:
    """P(Gamma closes | Gamma[0, |gamma|] = gamma, hang(Gamma) = |gamma|) over length n_total.

    gamma is taken up to translation. Returns None when gamma has no
    completion keeping its endpoint lexicographically maximal.
    """
    if hang_time(gamma) != gamma.n:
        raise WalkError("closing_score needs hang_time(gamma) == |gamma|", gamma)
    if gamma.n > n_total:
        raise WalkError(f"|gamma|={gamma.n} exceeds n_total={n_total}", gamma)
    spec = EnumSpec(
        dim=gamma.dim,
        n=n_total,
        walk_class=WalkClass.WALK,
        prefix=gamma.at_origin(),
        hang_time=gamma.n,
    )
    table = tally(spec, key_closes, "flag", workers=workers)
    if not table.total:
        return None
    return Fraction(table.get(True), table.total)


def hang_segment(w: Walk, length: int) -> Walk:
    """The cyclic segment gamma[hang - length, hang] of a closing walk."""
    h = hang_time(w)
    return cyclic_shift(w, h - length).segment(0, length)


def ticked_indices(
    w: Walk, n_ref: int, threshold: Fraction, workers: int | None = 1
) -> list[int]:
    """Lengths l in [0, min(n, n_ref)] whose hang segment scores at least threshold."""
    if not classify(w).closing:
        raise WalkError("ticked_indices needs a closing walk", w)
    ticked: list[int] = []
    for length in range(min(w.n, n_ref) + 1):
        score = closing_score(hang_segment(w, length), n_ref, workers=workers)
        if score is not None and score >= threshold:
            ticked.append(length)
    return ticked
