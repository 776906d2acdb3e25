"""Exception types raised across the package."""


class GraphFormatError(ValueError):
    """Malformed edge-list or graph6 input."""


class DomainError(ValueError):
    """A parameter lies outside the supported domain (size caps, families)."""


class WeightError(ValueError):
    """An edge-weight scheme violates its constraints."""


class ConvergenceError(ArithmeticError):
    """An iterative numerical routine failed to converge."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual
