"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where a formula is defined."""


class AccuracyError(ArithmeticError):
    """A numerical routine cannot reach its stated accuracy."""


class UsageError(ValueError):
    """Invalid combination of arguments or configuration."""
