"""Shared fixtures."""

from __future__ import annotations

import pytest
from click.testing import CliRunner

from saw_lab.core.walk import Walk
from saw_lab.parser.walk_text import parse_walk
from saw_lab.patterns.pairs import PatternPair, default_pattern_pair

SQUARE_WALK_COUNTS = [1, 4, 12, 36, 100, 284, 780, 2172, 5916, 16268, 44100, 120292, 324932]


@pytest.fixture
def walk():
    """Parse the textual walk form in d=2."""

    def make(text: str) -> Walk:
        return parse_walk(text, dim=2)

    return make


@pytest.fixture
def square():
    """The unit square traced from the origin: +1,+2,-1."""
    return parse_walk("+1,+2,-1", dim=2)


@pytest.fixture(scope="session")
def pair() -> PatternPair:
    return default_pattern_pair(2)


@pytest.fixture
def square_counts() -> list[int]:
    """c_0 .. c_12 on the square lattice."""
    return list(SQUARE_WALK_COUNTS)


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()
