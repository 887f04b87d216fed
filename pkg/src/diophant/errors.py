"""Exception hierarchy shared by the library and the CLI.

CLI exit-code mapping: UsageError -> 2, DegeneracyError -> 3,
BudgetExceededError -> 4, search failures (NoSolutionError,
CapExceededError) and failed checks -> 1.
"""

from __future__ import annotations


class DiophantError(Exception):
    """Base class for all library errors."""


class UsageError(DiophantError):
    """Bad arguments: empty vectors, dimension mismatches, violated preconditions."""


class RadiusInsufficientError(UsageError):
    """The search box cannot certify the requested minima.

    Carries whatever was established before giving up so callers can
    report a certified partial answer.
    """

    def __init__(self, message: str, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class DegeneracyError(DiophantError):
    """The homogeneous form vanished on a nonzero integer vector.

    `witness` is the integer vector y with theta^T y integral; rational
    truncations of irrational data always degenerate once |y| reaches the
    scale of the denominators.
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class BudgetExceededError(DiophantError):
    """An enumeration would exceed the configured point budget."""

    def __init__(self, needed: int, budget: int):
        super().__init__(f"enumeration of {needed} points exceeds budget {budget}")
        self.needed = needed
        self.budget = budget


class NoSolutionError(DiophantError):
    """No lattice point in range met the requested bound.

    `best` holds the best candidate found, when there is one.
    """

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best


class CapExceededError(DiophantError):
    """A parameter search ran past its cap without qualifying."""
