"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the function."""


class ConvergenceError(ArithmeticError):
    """A series hit its term cap before the stopping rule fired."""


class PatternViolation(ValueError):
    """Coefficients do not have the shape a sign or monotonicity test requires."""


class IndeterminateSign(ArithmeticError):
    """An enclosure straddles zero, so the sign cannot be certified."""
