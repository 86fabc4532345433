"""Shared exception base for the tla package."""


class TlaError(Exception):
    """Base class for all errors raised by this package."""
