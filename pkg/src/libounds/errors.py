"""Exception types shared across the package."""

from __future__ import annotations


class LiboundsError(Exception):
    """Base class for all errors raised by libounds."""


class ConfigurationError(LiboundsError, ValueError):
    """Invalid precision, sieve or table configuration."""


class DomainError(LiboundsError, ValueError):
    """An argument lies outside the domain of a function."""


class CapacityError(LiboundsError):
    """A request exceeds a configured capacity (sieve limit, factorial cap, table range)."""
