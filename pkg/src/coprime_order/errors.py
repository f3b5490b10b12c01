"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ResourceCapError(ValueError):
    """A request exceeds a configured size cap (e.g. brute-force enumeration)."""


class VerificationError(AssertionError):
    """A checked identity or inequality failed."""
