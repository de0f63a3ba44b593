"""Exception hierarchy shared by every module."""


class CFFracError(Exception):
    """Base class for all errors raised by :mod:`cffrac`."""


class DomainError(CFFracError, ValueError):
    """Evaluation outside a grid, or a grid too small for an operator."""


class OrderError(CFFracError, ValueError):
    """A fractional order outside the range an operator accepts."""


class TransformError(CFFracError, ArithmeticError):
    """Divergent Laplace sum, or evaluation at a pole."""


class QuadratureError(CFFracError, ArithmeticError):
    """Adaptive quadrature ran out of its subdivision budget."""


class ConvergenceError(CFFracError):
    """The Euler-Lagrange solver did not converge.

    The best iterate found is kept on :attr:`solution`.
    """

    def __init__(self, message, solution=None):
        super().__init__(message)
        self.solution = solution


class ConfigError(CFFracError, ValueError):
    """Invalid CLI experiment configuration."""
