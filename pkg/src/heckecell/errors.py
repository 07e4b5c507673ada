"""Exceptions shared across the package."""


class HeckecellError(Exception):
    """Base class for all package errors."""


class InputError(HeckecellError):
    """Malformed user input: bad config, unparsable file, invalid shape."""


class VerificationError(HeckecellError):
    """An exact mathematical identity that must hold was violated."""


class ComputationError(HeckecellError):
    """Internal inconsistency; indicates a bug, not bad input."""
