"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the function (e.g. nu <= 0, NaN)."""


class DegenerateSampleError(ArithmeticError):
    """Both samples have zero variance, so the t statistic is undefined."""
