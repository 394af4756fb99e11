"""Derived quantities: renormalization, peak structure, energy sum rule, Casimir-Polder."""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.integrate import quad
from scipy.optimize import brentq

from . import closed_forms as cf
from .errors import DivergentLimit, InvalidDomain, SurfaceDivergence
from .integrand import IntegrandSpec
from .modes import Field, Medium
from .quadrature import QuadratureConfig, integrate_fluctuation

# beyond this many cutoff lengths the z-integral is closed analytically
TAIL_START = 1e3


@dataclass(frozen=True)
class PeakStructure:
    z_min: float
    f_min: float
    z_max: float
    f_max: float
    width: float


@dataclass(frozen=True)
class PolarizableBody:
    alpha: float
    kind: Field = Field.ELECTRIC

    def __post_init__(self):
        object.__setattr__(self, "kind", Field(self.kind))
        if not self.alpha >= 0:
            raise InvalidDomain("polarizability must be >= 0")


def renormalize(raw, eta):
    """Subtract the homogeneous free-space value at the same cutoff."""
    return raw - cf.vacuum_fluct(eta)


def _curvature(z, eta):
    # second z-derivative of the electric conductor_renorm
    z2, e2 = z * z, eta * eta
    return 192.0 * (e2 * e2 - 40.0 * e2 * z2 + 80.0 * z2 * z2) / (math.pi * (e2 + 4.0 * z2) ** 5)


def peak_structure(eta) -> PeakStructure:
    """Extrema of the renormalized electric conductor density and its peak width.

    The width is the distance between the two inflection points flanking the
    maximum, located by bracketing root search on the analytic curvature.
    """
    if not eta > 0:
        raise InvalidDomain("eta must be > 0")
    z_max = 0.5 * eta
    opts = dict(xtol=1e-14 * eta, rtol=1e-13, maxiter=200)
    left = brentq(_curvature, 0.0, z_max, args=(eta,), **opts)
    right = brentq(_curvature, z_max, 2.0 * eta, args=(eta,), **opts)
    return PeakStructure(
        z_min=0.0,
        f_min=float(cf.conductor_renorm(eta, 0.0)),
        z_max=z_max,
        f_max=float(cf.conductor_renorm(eta, z_max)),
        width=right - left,
    )


def spatial_energy_integral(eta, field=Field.ELECTRIC):
    """``int_0^inf conductor_renorm(eta, z) dz``, which should vanish.

    Quadrature up to ``TAIL_START * eta``; the remaining tail uses the
    antiderivative ``-(4/pi) z / (4 z**2 + eta**2)**2``.
    """
    if not eta > 0:
        raise InvalidDomain("eta must be > 0")
    field = Field(field)
    Z = TAIL_START * eta
    scale = (4.0 / math.pi) / eta**3
    # split points (units of eta) bracket the sign change and the peak
    pts = [x * eta for x in (0.1, 1 / math.sqrt(12.0), 0.5, 1.0, 2.0, 5.0, 20.0, 100.0)]
    body, _ = quad(
        lambda z: cf.conductor_renorm(eta, z, field), 0.0, Z,
        points=pts, epsabs=1e-12 * scale, epsrel=1e-13, limit=500,
    )
    sign = 1.0 if field is Field.ELECTRIC else -1.0
    tail = sign * (4.0 / math.pi) * Z / (4.0 * Z * Z + eta * eta) ** 2
    return body + tail


def renormalized_fluctuation(field, z, medium: Medium, config: QuadratureConfig | None = None,
                             evanescent_k="euclidean"):
    """Renormalized fluctuation at height z, routed to the cheapest exact path."""
    field = Field(field)
    if medium.is_vacuum:
        return 0.0
    if medium.is_conductor:
        if medium.is_unregularized:
            return float(cf.ideal_renorm(z, field))
        return float(cf.conductor_renorm(medium.eta, z, field))
    if medium.is_unregularized:
        raise DivergentLimit("finite-n fluctuations need eta > 0")
    spec = IntegrandSpec(field, medium, z, renormalized=True, evanescent_k=evanescent_k)
    return integrate_fluctuation(spec, config).value


def casimir_polder(body: PolarizableBody, d, medium: Medium, config: QuadratureConfig | None = None):
    """Far-zone energy ``-(alpha/2) * <F^2>_R(d)`` of a body at distance d.

    The far-zone condition (d beyond the body's main transition wavelength)
    is assumed, not checked.
    """
    if not d >= 0:
        raise InvalidDomain("distance must be >= 0")
    if d == 0 and medium.is_unregularized:
        raise SurfaceDivergence("Casimir-Polder energy diverges at the interface for eta = 0")
    if body.alpha == 0:
        return 0.0
    return -0.5 * body.alpha * renormalized_fluctuation(body.kind, d, medium, config)


def ideal_limit_convergence(z, etas):
    """``|conductor_renorm(eta, z) / ideal_renorm(z) - 1|`` for each eta.

    With ``x = (eta/z)**2`` the deviation is
    ``x (5/6 + 3x/16 + x**2/64) / (1 + x/4)**3``, evaluated in that form to
    avoid subtracting two nearly equal numbers.
    """
    if not z > 0:
        raise InvalidDomain("z must be > 0")
    out = []
    for eta in etas:
        if not eta > 0:
            raise InvalidDomain("eta must be > 0")
        x = (eta / z) ** 2
        out.append(x * (5.0 / 6.0 + 3.0 * x / 16.0 + x * x / 64.0) / (1.0 + 0.25 * x) ** 3)
    return out
