"""Exception types shared across the package."""


class MinusculeError(Exception):
    """Base class for all package-specific errors."""


class DegreeCapError(MinusculeError):
    """A polynomial constructor exceeded the configured degree cap."""


class ExactnessError(MinusculeError):
    """An operation that must be exact produced a non-exact intermediate.

    This always indicates an implementation bug or a false identity, never
    bad user input.
    """


class ConsistencyError(MinusculeError):
    """Two routes that must agree disagreed (exact vs exact, or exact vs
    numeric beyond oracle tolerance).  Demands manual review."""


class NotRealRootedError(MinusculeError):
    """An operation requiring a real-rooted (certified) input was called on
    a polynomial that is not."""


class RefinementError(MinusculeError):
    """Interval refinement exhausted its budget before reaching the target
    width.  Carries the width that was achieved."""

    def __init__(self, message: str, achieved_width=None):
        super().__init__(message)
        self.achieved_width = achieved_width


class BudgetError(MinusculeError):
    """A combinatorial enumeration would exceed its configured budget.

    Raised instead of silently truncating."""
