"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Raised when parameters violate a model or circuit constraint."""


class RealizabilityError(ValidationError):
    """Raised when a circuit would need negative or undefined component values."""


class ConvergenceError(ArithmeticError):
    """Raised when an iterative eigensolver exhausts its iteration budget.

    ``index`` is the eigenvalue being iterated when the budget ran out.
    """

    def __init__(self, msg, index=None):
        super().__init__(msg)
        self.index = index


class NumericalError(ArithmeticError):
    """Raised for numerically ill-posed requests (singular matrices, empty windows)."""
