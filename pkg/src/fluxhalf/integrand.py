"""Scalar integrands of the regulated field fluctuations.

Every integrand returns ``k_par * k * {brace}`` as a density over the wave
vector quarter plane (traveling channels) or over ``(k_par, kappa)``
(evanescent channel). The global ``hbar c / (2 pi)`` and the cutoff weight
``exp(-eta k)`` belong to the quadrature layer.

Two helpers expose the same integrands in the form the quadrature driver
needs. On the traveling channels every Fresnel factor depends only on the
direction ``c = k_z / k``, so the brace splits into a steady part and an
interference amplitude multiplying ``cos(2 k_z z)``. On the evanescent
channel the ratio ``w = kappa / k_par`` plays the same role.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidDomain
from .modes import Field, Medium, evanescent_kappa_max, fresnel_factors

#: Wavenumber entering the prefactor and the cutoff on the evanescent channel.
#: "euclidean" uses sqrt(k_par**2 + kappa**2), the norm of the integration
#: variables of the double integral; "frequency" uses the conserved
#: frequency sqrt(k_par**2 - kappa**2).
EVANESCENT_CONVENTIONS = ("euclidean", "frequency")


@dataclass(frozen=True)
class IntegrandSpec:
    field: Field
    medium: Medium
    z: float
    renormalized: bool = False
    evanescent_k: str = "euclidean"

    def __post_init__(self):
        object.__setattr__(self, "field", Field(self.field))
        if not self.z >= 0.0 or math.isinf(self.z):
            raise InvalidDomain(f"z must be finite and >= 0, got {self.z!r}")
        if self.evanescent_k not in EVANESCENT_CONVENTIONS:
            raise InvalidDomain(f"unknown evanescent convention {self.evanescent_k!r}")


def _check_z(z):
    if np.any(~(np.asarray(z, dtype=float) >= 0.0)):
        raise InvalidDomain("z must be >= 0 (vacuum side only)")


def traveling_terms(k_par, k_z, n, field):
    """Split the traveling brace into ``(steady, interference)``.

    ``brace = steady + interference * cos(2 k_z z)``. Both parts are
    homogeneous of degree zero in ``(k_par, k_z)``.
    """
    field = Field(field)
    k_par = np.asarray(k_par, dtype=float)
    k_z = np.asarray(k_z, dtype=float)
    k2 = k_par**2 + k_z**2
    if math.isinf(n):
        tilt = 4.0 * k_z**2 / k2
        steady = np.full_like(tilt, 4.0)
        return steady, (-tilt if field is Field.ELECTRIC else tilt)
    f = fresnel_factors(k_par, k_z, n)
    ratio = k_z / f.k_dz
    steady = 2.0 + f.r_te**2 + f.r_tm**2 + ratio * (f.t_te**2 + f.t_tm**2)
    angular = (k_par**2 - k_z**2) / k2
    if field is Field.ELECTRIC:
        interference = 2.0 * f.r_te + 2.0 * angular * f.r_tm
    else:
        interference = 2.0 * angular * f.r_te + 2.0 * f.r_tm
    return steady, interference


def traveling_interference(k_par, k_z, n, field):
    """Interference amplitude alone.

    Flux conservation makes ``r**2 + (k_z/k_dz) t**2 = 1`` for each
    polarization, so the steady part equals its vacuum value 4 for every n
    and the renormalized brace is the interference term only.
    """
    return traveling_terms(k_par, k_z, n, field)[1]


def _traveling(k_par, k_z, n, z, field, renormalized=False):
    if math.isinf(n):
        raise InvalidDomain("n = inf: use conductor_limit")
    _check_z(z)
    k_par = np.asarray(k_par, dtype=float)
    k_z = np.asarray(k_z, dtype=float)
    if np.any(k_par <= 0) or np.any(k_z <= 0):
        raise InvalidDomain("traveling integrands need k_par > 0 and k_z > 0")
    steady, interference = traveling_terms(k_par, k_z, n, field)
    if renormalized:
        steady = 0.0
    k = np.hypot(k_par, k_z)
    return k_par * k * (steady + interference * np.cos(2.0 * k_z * z))


def electric_traveling(k_par, k_z, n, z):
    return _traveling(k_par, k_z, n, z, Field.ELECTRIC)


def magnetic_traveling(k_par, k_z, n, z):
    return _traveling(k_par, k_z, n, z, Field.MAGNETIC)


def _evanescent_k(k_par, kappa, convention):
    if convention == "euclidean":
        return np.hypot(k_par, kappa)
    if convention == "frequency":
        return np.sqrt((k_par - kappa) * (k_par + kappa))
    raise InvalidDomain(f"unknown evanescent convention {convention!r}")


def electric_evanescent(k_par, kappa, n, z, evanescent_k="euclidean"):
    """Evanescent tail of the totally reflected L modes, ``0 < kappa < kappa_max``.

    The factor ``kappa/k_dz`` is folded into the bracket so the expression
    stays finite (and tends to zero) at ``kappa -> kappa_max``.
    """
    _check_z(z)
    k_par = np.asarray(k_par, dtype=float)
    kappa = np.asarray(kappa, dtype=float)
    shape = np.broadcast(k_par, kappa, np.asarray(z)).shape
    if n == 1.0 or math.isinf(n):
        return np.zeros(shape)[()]
    kmax = evanescent_kappa_max(k_par, n)
    if np.any(kappa < 0) or np.any(kappa >= kmax):
        raise InvalidDomain("kappa must lie in [0, kappa_max)")
    k_dz = n * np.sqrt((kmax - kappa) * (kmax + kappa))
    kd2 = k_dz**2
    bracket = 4.0 * kappa * k_dz / (kd2 + kappa**2) + 4.0 * n * n * kappa * k_dz / (kd2 + n**4 * kappa**2)
    k = _evanescent_k(k_par, kappa, evanescent_k)
    return k_par * k * bracket * np.exp(-2.0 * kappa * z)


def magnetic_evanescent(k_par, kappa, n, z, evanescent_k="euclidean"):
    # Both printed evanescent terms are the same function.
    return electric_evanescent(k_par, kappa, n, z, evanescent_k)


def conductor_limit(k_par, k_z, z, field):
    field = Field(field)
    _check_z(z)
    k_par = np.asarray(k_par, dtype=float)
    k_z = np.asarray(k_z, dtype=float)
    if np.any(k_par <= 0) or np.any(k_z <= 0):
        raise InvalidDomain("conductor integrand needs k_par > 0 and k_z > 0")
    k = np.hypot(k_par, k_z)
    trig = np.sin(k_z * z) if field is Field.ELECTRIC else np.cos(k_z * z)
    return 4.0 * (k_par / k) * (k_par**2 + 2.0 * k_z**2 * trig**2)


def traveling(k_par, k_z, spec: IntegrandSpec):
    """Traveling-channel integrand for ``spec`` (any n, including inf)."""
    n = spec.medium.n
    if math.isinf(n):
        if spec.renormalized:
            return renormalized_integrand(k_par, k_z, spec)
        return conductor_limit(k_par, k_z, spec.z, spec.field)
    return _traveling(k_par, k_z, n, spec.z, spec.field, spec.renormalized)


def evanescent(k_par, kappa, spec: IntegrandSpec):
    # Vacuum has no evanescent modes, so renormalization leaves this channel untouched.
    return electric_evanescent(k_par, kappa, spec.medium.n, spec.z, spec.evanescent_k)


def renormalized_integrand(k_par, q, spec: IntegrandSpec, channel="traveling"):
    """Integrand with the free-vacuum (n = 1) integrand subtracted pointwise.

    ``q`` is ``k_z`` on the traveling channel and ``kappa`` on the
    evanescent one.
    """
    if channel == "evanescent":
        return evanescent(k_par, q, spec)
    if channel != "traveling":
        raise InvalidDomain(f"unknown channel {channel!r}")
    _check_z(spec.z)
    k_par = np.asarray(k_par, dtype=float)
    k_z = np.asarray(q, dtype=float)
    if math.isinf(spec.medium.n):
        k = np.hypot(k_par, k_z)
        sign = -1.0 if spec.field is Field.ELECTRIC else 1.0
        return sign * 4.0 * k_par * k_z**2 / k * np.cos(2.0 * k_z * spec.z)
    return _traveling(k_par, k_z, spec.medium.n, spec.z, spec.field, renormalized=True)


# -- angular profiles used by the quadrature driver -------------------------

def traveling_profile(c, n, field):
    """``(steady, interference)`` at unit k along direction ``c = k_z/k``."""
    c = np.asarray(c, dtype=float)
    s = np.sqrt((1.0 - c) * (1.0 + c))
    return traveling_terms(s, c, n, field)


def evanescent_profile(phi, n, evanescent_k="euclidean"):
    """Evanescent channel in the angle ``phi`` with ``w = w_max sin(phi)``.

    Returns ``(w, dw_dphi, bracket, rho)`` where ``w = kappa/k_par``,
    ``bracket`` is the (kappa/k_dz)-weighted amplitude sum and
    ``rho = k/k_par`` for the chosen convention. Writing ``k_dz/k_par =
    sqrt(n**2-1) cos(phi)`` removes the square-root endpoint at
    ``kappa_max`` and avoids the cancellation in ``kappa_max - kappa``.
    """
    phi = np.asarray(phi, dtype=float)
    a = math.sqrt((n - 1.0) * (n + 1.0))
    sp, cp = np.sin(phi), np.cos(phi)
    w = a / n * sp
    te = 4.0 * n * sp * cp / (n * n * cp**2 + sp**2)
    tm = 4.0 * n * sp * cp / (cp**2 + n * n * sp**2)
    if evanescent_k == "euclidean":
        rho = np.sqrt(n * n + a * a * sp**2) / n
    elif evanescent_k == "frequency":
        rho = np.sqrt(n * n * cp**2 + sp**2) / n
    else:
        raise InvalidDomain(f"unknown evanescent convention {evanescent_k!r}")
    return w, a / n * cp, te + tm, rho
