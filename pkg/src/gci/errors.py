"""Exception types shared across the package.

The CLI maps these onto process exit codes: configuration/input problems
exit 1, violated mathematical preconditions exit 2, enumeration budget
overruns exit 3.
"""


class GciError(Exception):
    """Base class for every error raised by this package."""


class AmbientMismatchError(GciError):
    """Two objects live over different ambient spaces."""


class DegreeError(GciError):
    """Multidegree bookkeeping violated (wrong length, wrong sum, ...)."""


class ParseError(GciError):
    """Polynomial text does not conform to the grammar."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class BasisUnavailableError(GciError):
    """Requested a monomial basis for a cohomology group that has none
    (mixed Kunneth summands, or the dimension vanishes)."""


class KernelMembershipError(GciError):
    """A first-cohomology class is not in the kernel of the
    multiplication map, so no pair of chart sections glues."""


class VanishingHypothesisError(GciError):
    """H^1 of the degree-difference bundle on the base does not vanish,
    which the chart-splitting construction requires."""


class BudgetExceededError(GciError):
    """A finite-field enumeration would visit more points than allowed."""


class ConfigError(GciError):
    """Job configuration failed schema validation."""
