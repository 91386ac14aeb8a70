"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input lies outside an operation's domain (zero radicand, zero exponent, ...)."""


class CapacityError(RuntimeError):
    """A configured resource bound was exceeded (huge factorization, dimension cap, ...)."""


class UnsupportedInputError(ValueError):
    """Input is well-formed but outside the supported restriction of an operation."""


class InternalInvariantError(RuntimeError):
    """A mathematically guaranteed invariant failed at runtime; this signals a bug."""


class OracleInconclusiveError(RuntimeError):
    """The randomized field test exhausted its retry budget without a generating element."""
