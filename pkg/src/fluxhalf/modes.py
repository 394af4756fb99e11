"""Wavevector kinematics and vacuum-side amplitudes of the half-space modes.

Natural units (hbar = c = 1) throughout. ``n = math.inf`` is the ideal
conductor and is dispatched to analytic limits rather than evaluated as a
large float. All functions accept scalars or numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import InvalidDomain

INF = math.inf


class Field(str, Enum):
    ELECTRIC = "electric"
    MAGNETIC = "magnetic"

    @classmethod
    def _missing_(cls, value):
        aliases = {"e": cls.ELECTRIC, "b": cls.MAGNETIC}
        if isinstance(value, str):
            return aliases.get(value.lower())
        return None


@dataclass(frozen=True)
class Medium:
    """Dielectric half-space z < 0 seen from the vacuum side.

    Attributes
    ----------
    n : float
        Refractive index, ``>= 1``; ``math.inf`` selects the ideal conductor.
    eta : float
        Cutoff timescale (natural units, i.e. a length ``c * eta``). The
        value ``0.0`` is the unregularized theory and is only accepted by
        the closed-form evaluators.
    """

    n: float
    eta: float

    def __post_init__(self):
        if math.isnan(self.n) or self.n < 1.0:
            raise InvalidDomain(f"refractive index must be >= 1, got {self.n!r}")
        if math.isnan(self.eta) or self.eta < 0.0 or math.isinf(self.eta):
            raise InvalidDomain(f"cutoff timescale must be finite and >= 0, got {self.eta!r}")

    @property
    def is_conductor(self) -> bool:
        return math.isinf(self.n)

    @property
    def is_vacuum(self) -> bool:
        return self.n == 1.0

    @property
    def is_unregularized(self) -> bool:
        return self.eta == 0.0


@dataclass(frozen=True)
class ModeFactors:
    r_te: np.ndarray | float
    r_tm: np.ndarray | float
    t_te: np.ndarray | float
    t_tm: np.ndarray | float
    k_dz: np.ndarray | float


@dataclass(frozen=True)
class EvanescentFactors:
    """Squared moduli of the L-mode vacuum-side amplitudes past the critical angle."""

    t_te_sq: np.ndarray | float
    t_tm_sq: np.ndarray | float
    k_dz: np.ndarray | float


def _check_index(n):
    arr = np.asarray(n, dtype=float)
    if np.any(np.isnan(arr)) or np.any(arr < 1.0):
        raise InvalidDomain(f"refractive index must be >= 1, got {n!r}")
    if arr.ndim and np.any(np.isinf(arr)):
        raise InvalidDomain("n = inf must be passed as a scalar")


def _is_inf(n):
    return np.ndim(n) == 0 and math.isinf(n)


def _nonneg(name, x):
    x = np.asarray(x, dtype=float)
    if np.any(~(x >= 0.0)):
        raise InvalidDomain(f"{name} must be >= 0")
    return x


def _index_excess(n):
    # n**2 - 1 without cancellation for n close to 1
    return (n - 1.0) * (n + 1.0)


def dielectric_kz(k_par, k_z, n):
    """Normal wavenumber inside the dielectric for a traveling vacuum wave."""
    _check_index(n)
    k_par = _nonneg("k_par", k_par)
    k_z = _nonneg("k_z", k_z)
    if _is_inf(n):
        return np.where((k_par == 0) & (k_z == 0), 0.0, INF)[()]
    return np.sqrt(_index_excess(n) * k_par**2 + n * n * k_z**2)


def evanescent_kappa_max(k_par, n):
    """Upper end of the vacuum decay rate for totally reflected L modes."""
    _check_index(n)
    k_par = _nonneg("k_par", k_par)
    if _is_inf(n):
        return k_par[()]
    return np.sqrt(_index_excess(n)) / n * k_par


def evanescent_kz(k_par, kappa, n):
    """Dielectric normal wavenumber on the evanescent branch, kappa < kappa_max."""
    kmax = evanescent_kappa_max(k_par, n)
    kappa = _nonneg("kappa", kappa)
    if np.any(kappa >= kmax):
        raise InvalidDomain("kappa must lie in [0, kappa_max)")
    return n * np.sqrt((kmax - kappa) * (kmax + kappa))


def fresnel_factors(k_par, k_z, n) -> ModeFactors:
    """Reflection and vacuum-side transmission factors for one (k_par, k_z).

    ``r_te``/``r_tm`` multiply the reflected partial wave of the R modes;
    ``t_te``/``t_tm`` are the amplitudes that L modes carry into z > 0
    (before their overall ``1/n`` normalization).
    """
    _check_index(n)
    k_par = _nonneg("k_par", k_par)
    k_z = _nonneg("k_z", k_z)
    if np.any(k_z == 0.0):
        raise InvalidDomain("k_z = 0 (grazing incidence) is an open endpoint")
    if _is_inf(n):
        k = np.hypot(k_par, k_z)
        one = np.ones_like(k)
        return ModeFactors(-one[()], one[()], 2.0 * one[()], (2.0 * k / k_z)[()], np.full_like(k, INF)[()])
    k_dz = dielectric_kz(k_par, k_z, n)
    nn = n * n
    return ModeFactors(
        r_te=(k_z - k_dz) / (k_z + k_dz),
        r_tm=(nn * k_z - k_dz) / (nn * k_z + k_dz),
        t_te=2.0 * k_dz / (k_dz + k_z),
        t_tm=2.0 * n * k_dz / (k_dz + nn * k_z),
        k_dz=k_dz,
    )


def evanescent_factors(k_par, kappa, n) -> EvanescentFactors:
    k_dz = evanescent_kz(k_par, kappa, n)
    kappa = np.asarray(kappa, dtype=float)
    kd2 = k_dz**2
    return EvanescentFactors(
        t_te_sq=4.0 * kd2 / (kd2 + kappa**2),
        t_tm_sq=4.0 * n * n * kd2 / (kd2 + n**4 * kappa**2),
        k_dz=k_dz,
    )


def mode_intensity(family, pol, k_par, k_z, z, n, field=Field.ELECTRIC):
    """(2 pi)^3 times the summed squared components of one vacuum-side mode.

    For the magnetic field the curl of the mode is used, normalized by |k|,
    which swaps the angular factor of the TE and TM interference terms.
    L-mode values include the ``1/n**2`` of the mode normalization; the
    change of variables ``dk_dz = n**2 k_z / k_dz dk_z`` restores it when
    the L modes are summed against the R modes.
    """
    family = family.upper()
    pol = pol.upper()
    field = Field(field)
    if family not in ("R", "L") or pol not in ("TE", "TM"):
        raise InvalidDomain(f"unknown mode {family}/{pol}")
    z = np.asarray(z, dtype=float)
    if np.any(z < 0):
        raise InvalidDomain("z must be >= 0")
    f = fresnel_factors(k_par, k_z, n)
    k_par = np.asarray(k_par, dtype=float)
    k_z = np.asarray(k_z, dtype=float)
    if family == "L":
        if _is_inf(n):
            return np.zeros(np.broadcast(k_par, k_z, z).shape)[()]
        t = f.t_te if pol == "TE" else f.t_tm
        return np.broadcast_to(t**2 / (n * n), np.broadcast(k_par, k_z, z).shape)[()]
    r = f.r_te if pol == "TE" else f.r_tm
    phase = np.cos(2.0 * k_z * z)
    tilted = (pol == "TM") == (field is Field.ELECTRIC)
    angular = (k_par**2 - k_z**2) / (k_par**2 + k_z**2) if tilted else 1.0
    return 1.0 + r**2 + 2.0 * r * angular * phase
