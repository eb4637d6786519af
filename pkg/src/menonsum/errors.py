"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ResourceError(RuntimeError):
    """A configured enumeration or work cap would be exceeded."""


class IntegralityError(ArithmeticError):
    """A sum that must be a rational integer did not reduce to one.

    Seeing this means a bug in the evaluator, not a property of the input.
    """
