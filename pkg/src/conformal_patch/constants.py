"""Physical constants (SI)."""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class PhysicalConstants:
    c: float  # m/s
    eps0: float  # F/m
    mu0: float  # H/m

    def __post_init__(self) -> None:
        derived = 1.0 / math.sqrt(self.eps0 * self.mu0)
        if abs(derived - self.c) / self.c > 1e-6:
            raise ValueError("c must equal 1/sqrt(eps0*mu0) within 1e-6 relative")


SPEED_OF_LIGHT = 299_792_458.0
VACUUM_PERMEABILITY = 1.25663706212e-6
VACUUM_PERMITTIVITY = 1.0 / (VACUUM_PERMEABILITY * SPEED_OF_LIGHT**2)
FREE_SPACE_IMPEDANCE = VACUUM_PERMEABILITY * SPEED_OF_LIGHT

SI = PhysicalConstants(c=SPEED_OF_LIGHT, eps0=VACUUM_PERMITTIVITY, mu0=VACUUM_PERMEABILITY)


def wavenumber(frequency: float) -> float:
    """Free-space wavenumber 2*pi*f/c in rad/m."""
    return 2.0 * math.pi * frequency / SPEED_OF_LIGHT


def wavelength(frequency: float) -> float:
    return SPEED_OF_LIGHT / frequency
