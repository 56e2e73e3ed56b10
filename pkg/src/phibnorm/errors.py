"""Semantic exceptions shared across the package."""


class PhibnormError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(PhibnormError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConfigError(PhibnormError, ValueError):
    """A run configuration is malformed or violates a declared constraint."""


class CertificateError(PhibnormError):
    """An estimator could not produce (or re-check) a valid certificate."""
