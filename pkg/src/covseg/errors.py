"""Exception hierarchy."""


class CovsegError(Exception):
    """Base class for every error raised by this package."""


class IntegrityError(CovsegError):
    """A quantity that must be an integer came out fractional.

    The underlying theory guarantees integrality, so this signals a bug in
    the calculator or an inadmissible input.
    """


class HypothesisError(CovsegError):
    """An operation was called outside the hypotheses it is valid under."""


class InvariantError(CovsegError, ValueError):
    """A value violates a structural invariant (e.g. l(rho) not dividing n)."""
