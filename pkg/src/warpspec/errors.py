"""Exception types shared across the package.

The CLI maps these onto process exit codes, so keep the hierarchy flat.
"""


class WarpspecError(Exception):
    """Base class for every error raised deliberately by warpspec."""


class InvalidInput(WarpspecError, ValueError):
    """Parameters or data outside an operation's preconditions."""


class NumericalFailure(WarpspecError, ArithmeticError):
    """A solver or fit did not converge to the requested tolerance."""


class IncomparableDomains(WarpspecError):
    """Two warped metrics cannot be compared pointwise (domain too short)."""
