"""Exception hierarchy shared by all saw-lab modules."""

from __future__ import annotations

from typing import Any


class SawLabError(Exception):
    """Base class for every error raised by saw-lab."""


class DimensionMismatchError(SawLabError, ValueError):
    """Raised when two lattice objects live in different dimensions."""

    def __init__(self, left: int, right: int) -> None:
        self.left = left
        self.right = right
        super().__init__(f"Dimension mismatch: {left} vs {right}")


class WalkError(SawLabError, ValueError):
    """Raised when a walk does not satisfy an operation's precondition."""

    def __init__(self, message: str, walk: Any = None) -> None:
        self.walk = walk
        super().__init__(message)


class EnumerationError(SawLabError, ValueError):
    """Raised for inconsistent enumeration constraints."""


class InfeasibleSizeError(EnumerationError):
    """Raised when an exact query exceeds the feasibility table."""

    def __init__(self, walk_class: str, n: int, limit: int) -> None:
        self.walk_class = walk_class
        self.n = n
        self.limit = limit
        super().__init__(
            f"Exact {walk_class} enumeration at n={n} exceeds the feasible "
            f"limit {limit} (use --force to override)"
        )


class PatternError(SawLabError, ValueError):
    """Raised for invalid pattern pairs, slot indices or overlapping occurrences."""


class MVMError(SawLabError, ValueError):
    """Raised when a multi-valued map instance is malformed."""


class SamplerError(SawLabError, ValueError):
    """Raised for invalid sampler configurations."""
