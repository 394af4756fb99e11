"""Exception hierarchy shared by all fluxhalf modules."""

from __future__ import annotations


class FluxhalfError(Exception):
    """Base class for fluxhalf errors."""


class InvalidDomain(FluxhalfError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class DivergentLimit(FluxhalfError, ArithmeticError):
    """The requested quantity diverges (e.g. the unregularized eta = 0 theory)."""


class SurfaceDivergence(DivergentLimit):
    """The ideal-conductor renormalized density evaluated at the interface z = 0."""


class NonConvergence(FluxhalfError, ArithmeticError):
    """Quadrature budget exhausted before the requested tolerance was met.

    The best available estimate is kept on the exception so callers (the
    sweep driver in particular) can still report it.
    """

    def __init__(self, message: str, value: float, error: float, evaluations: int = 0):
        super().__init__(message)
        self.value = value
        self.error = error
        self.evaluations = evaluations
