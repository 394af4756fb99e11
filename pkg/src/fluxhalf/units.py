"""SI constants and natural-unit conversion.

Natural units set hbar = c = 1 with the metre as base length, so times are
stored as ``c * t`` (m) and fluctuation densities as m**-4. Converting a
density to SI multiplies by ``hbar c`` and gives the Gaussian-form
``<E^2>`` in J/m**3 (the displayed formulas carry hbar and c explicitly).
"""

from __future__ import annotations

import math

# CODATA 2018 (h and c exact in the 2019 SI)
PLANCK_H = 6.62607015e-34  # J s
HBAR = PLANCK_H / (2.0 * math.pi)  # J s
SPEED_OF_LIGHT = 299792458.0  # m / s

# natural -> SI multiplier per quantity kind
_FACTORS = {
    "length": 1.0,
    "time": 1.0 / SPEED_OF_LIGHT,
    "frequency": SPEED_OF_LIGHT,
    "fluctuation": HBAR * SPEED_OF_LIGHT,
    "energy": HBAR * SPEED_OF_LIGHT,
}

QUANTITY_KINDS = tuple(_FACTORS)


def convert_units(value, kind, direction="to_si"):
    """Convert ``value`` of the given quantity kind between natural and SI units.

    ``direction`` is ``"to_si"`` or ``"to_natural"``.
    """
    try:
        factor = _FACTORS[kind]
    except KeyError:
        raise ValueError(f"unknown quantity kind {kind!r}; expected one of {QUANTITY_KINDS}") from None
    if direction == "to_si":
        return value * factor
    if direction == "to_natural":
        return value / factor
    raise ValueError(f"direction must be 'to_si' or 'to_natural', got {direction!r}")


def eta_from_cutoff_frequency(frequency_hz):
    """Cutoff timescale (s) for a cutoff frequency ``omega_c = 1/eta`` given in Hz."""
    if not frequency_hz > 0:
        raise ValueError("cutoff frequency must be > 0")
    return 1.0 / frequency_hz
