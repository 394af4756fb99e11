"""Analytic values of the vacuum and conductor fluctuations (hbar = c = 1).

Nothing here imports the quadrature path; the two are used as each
other's oracle.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DivergentLimit, InvalidDomain, SurfaceDivergence
from .modes import Field

SQRT12 = math.sqrt(12.0)


def _sign(field) -> float:
    return 1.0 if Field(field) is Field.ELECTRIC else -1.0


def _eta(eta, what):
    eta = np.asarray(eta, dtype=float)
    if np.any(eta < 0) or np.any(np.isnan(eta)):
        raise InvalidDomain("eta must be >= 0")
    if np.any(eta == 0):
        raise DivergentLimit(f"{what} diverges at eta = 0")
    return eta


def _z(z):
    z = np.asarray(z, dtype=float)
    if np.any(~(z >= 0)):
        raise InvalidDomain("z must be >= 0")
    return z


def vacuum_fluct(eta, field=Field.ELECTRIC):
    """Free-space ``<E^2>`` (equal to ``<B^2>``): ``12 / (pi eta**4)``."""
    Field(field)
    eta = _eta(eta, "vacuum fluctuation")
    return (12.0 / (math.pi * eta**4))[()]


def conductor_renorm(eta, z, field=Field.ELECTRIC):
    """Renormalized conductor fluctuation with finite cutoff.

    ``(4/pi) (12 z**2 - eta**2) / (4 z**2 + eta**2)**3`` for the electric
    field, the negative for the magnetic one. The numerator is factored so
    the zero at ``z = eta/sqrt(12)`` keeps full relative precision.
    """
    eta = _eta(eta, "conductor_renorm (use ideal_renorm for eta = 0)")
    z = _z(z)
    num = (SQRT12 * z - eta) * (SQRT12 * z + eta)
    return (_sign(field) * (4.0 / math.pi) * num / (4.0 * z * z + eta * eta) ** 3)[()]


def conductor_raw(eta, z, field=Field.ELECTRIC):
    return (vacuum_fluct(eta) + conductor_renorm(eta, z, field))[()]


def ideal_renorm(z, field=Field.ELECTRIC):
    """``+-3 / (4 pi z**4)``: the eta -> 0 limit, singular at the interface."""
    z = _z(z)
    if np.any(z == 0):
        raise SurfaceDivergence("renormalized ideal-conductor fluctuation diverges at z = 0")
    return (_sign(field) * 3.0 / (4.0 * math.pi * z**4))[()]


def evaluate(variant, field, eta, z=0.0):
    """Dispatch by name: vacuum, conductor_raw, conductor_renorm, ideal_renorm."""
    if variant == "vacuum":
        return vacuum_fluct(eta, field)
    if variant == "conductor_raw":
        return conductor_raw(eta, z, field)
    if variant == "conductor_renorm":
        return conductor_renorm(eta, z, field)
    if variant == "ideal_renorm":
        return ideal_renorm(z, field)
    raise InvalidDomain(f"unknown closed-form variant {variant!r}")
