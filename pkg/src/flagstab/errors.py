"""Exception hierarchy shared by every module."""


class FlagstabError(Exception):
    """Base class for all library errors."""


class DomainError(FlagstabError, ValueError):
    """An input lies outside the domain of an operation."""


class ConfigurationError(FlagstabError, ValueError):
    """Operands or configuration values are mutually incompatible."""


class IdentityViolation(FlagstabError, AssertionError):
    """A mandatory internal identity failed; this always signals a bug."""
