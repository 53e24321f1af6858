"""Exception types shared across the package."""


class QuotfitError(Exception):
    """Base class for errors raised by quotfit."""


class RingMismatchError(QuotfitError, ValueError):
    """Operands live in different polynomial rings."""


class ResourceError(QuotfitError):
    """A configured computation budget (S-pairs, minor count) was exceeded."""


class ParseError(QuotfitError, ValueError):
    """Text or JSON input could not be parsed."""
