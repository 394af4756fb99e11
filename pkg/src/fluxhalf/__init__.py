"""Vacuum electric and magnetic field fluctuations next to a dielectric half-space.

Natural units (hbar = c = 1) are used throughout the library; SI conversion
lives in :mod:`fluxhalf.units` and the command line.
"""

from .closed_forms import conductor_raw, conductor_renorm, ideal_renorm, vacuum_fluct
from .errors import DivergentLimit, FluxhalfError, InvalidDomain, NonConvergence, SurfaceDivergence
from .integrand import IntegrandSpec
from .modes import INF, Field, Medium
from .quadrature import (
    FluctuationResult,
    QuadratureConfig,
    integrate_fluctuation,
    integrate_renormalized_conductor,
)

__all__ = [
    "INF",
    "DivergentLimit",
    "Field",
    "FluctuationResult",
    "FluxhalfError",
    "IntegrandSpec",
    "InvalidDomain",
    "Medium",
    "NonConvergence",
    "QuadratureConfig",
    "SurfaceDivergence",
    "conductor_raw",
    "conductor_renorm",
    "ideal_renorm",
    "integrate_fluctuation",
    "integrate_renormalized_conductor",
    "vacuum_fluct",
]
