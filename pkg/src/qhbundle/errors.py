"""Exception hierarchy shared by all modules."""


class QHBundleError(Exception):
    """Base class for every error raised by :mod:`qhbundle`."""


class DomainError(QHBundleError, ValueError):
    """An integer parameter (dimension, Picard class, ...) is out of range."""


class ChartExcluded(QHBundleError, ValueError):
    """The point lies on the hyperplane at infinity of the requested chart."""


class ChartMismatch(QHBundleError, ValueError):
    """Two fiber states are expressed in different charts or Picard classes."""


class UnsupportedPicardClass(DomainError):
    """No fiber construction exists for this Picard class."""


class PathDiscontinuous(QHBundleError, ValueError):
    """Consecutive path segments do not meet, or a loop is not closed."""


class NumericalFailure(QHBundleError, ArithmeticError):
    """Base class for failures of an iterative numerical scheme."""


class QuadratureFailure(NumericalFailure):
    """Adaptive quadrature did not reach the requested tolerance."""


class StepFailure(NumericalFailure):
    """An ODE integrator could not take a step of acceptable size."""
