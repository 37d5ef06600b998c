"""Shared exception types."""


class InputError(ValueError):
    """An operation received ill-formed or out-of-contract input."""


class ParseError(InputError):
    """An input document does not match its schema."""


class CapError(RuntimeError):
    """An operation would exceed a configured resource cap."""
