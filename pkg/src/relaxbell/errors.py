"""Exception types shared across the package."""


class ValidationError(ValueError):
    """A model, decomposition, or weight vector violates one of its invariants."""


class ParameterError(ValueError):
    """A numeric argument lies outside its admissible range."""


class DomainError(ParameterError):
    """The query is valid but outside the regime a solver covers."""
