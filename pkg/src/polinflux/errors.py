"""Exception types shared across the package.

The CLI maps :class:`InputError` to exit code 2 and
:class:`NumericalError` to exit code 3.
"""


class PolinfluxError(Exception):
    """Base class for all package-specific errors."""


class InputError(PolinfluxError):
    """Invalid model input or configuration."""


class NumericalError(PolinfluxError):
    """A numerical routine failed or left its validity range."""


class IndexOutOfRangeError(InputError):
    """Edge endpoint outside the legislator index range."""


class SelfLoopError(InputError):
    """Edge from a legislator to itself (diagonal must be zero)."""


class WeightOutOfRangeError(InputError):
    """Susceptibility weight outside [0, 1]."""


class EmptyPartyError(InputError):
    """A party with no legislators."""


class SingularSystemError(NumericalError):
    """Linear system factorization failed."""


class LinkAlreadyPresentError(InputError):
    """Incremental update requested for a link that already exists."""


class DenominatorNonPositiveError(NumericalError):
    """Rank-one update denominator 1 - beta*x_ij is not positive."""


class DegenerateDenominatorError(NumericalError):
    """Closed-form complete-network denominator is not positive."""


class NonPositiveInfluenceError(InputError):
    """Allocation weights must be strictly positive."""


class BisectionFailureError(NumericalError):
    """Dual bisection could not bracket or meet the budget tolerance."""


class NotStrongerError(InputError):
    """Comparison network is not a weakly stronger version of the base."""


class CrossPartyLinksPresentError(InputError):
    """Affective mode requires a legislature without cross-party links."""


class AlphaTooLargeError(InputError):
    """Affective polarization at or above the validity ceiling."""


class FormulaMismatchError(NumericalError):
    """Scaled-influence form disagrees with the direct block solve."""


class EqualInfluenceError(InputError):
    """Formula degenerates when both parties are equally influential."""


class NoConvergenceError(NumericalError):
    """Fixed-point iteration failed to converge."""


class TooManyLegislatorsError(InputError):
    """Exhaustive grid search is limited to small legislatures."""
