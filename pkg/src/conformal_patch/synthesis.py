"""Closed-form rectangular patch synthesis (transmission-line model).

All lengths are in meters and frequencies in Hz. The chain is

    width -> effective permittivity -> effective length
          -> fringing extension -> physical length

and :func:`resonant_frequency` inverts it exactly, so
``resonant_frequency(synthesize_patch(f, s)) == f`` up to rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import SPEED_OF_LIGHT, VACUUM_PERMEABILITY, VACUUM_PERMITTIVITY
from .errors import DomainError

# Pole of the fringing-extension formula.
_DELTA_L_POLE = 0.258


@dataclass(frozen=True)
class Substrate:
    """Single-layer board stackup.

    Attributes:
        eps_r: Relative permittivity of the dielectric.
        h: Dielectric height in meters.
        metal_thickness: Conductor thickness in meters.
        radiation_efficiency: Fraction of accepted power that is radiated.
    """

    eps_r: float
    h: float
    metal_thickness: float = 0.0
    radiation_efficiency: float = 0.8

    def __post_init__(self) -> None:
        if not self.eps_r >= 1.0:
            raise DomainError(f"eps_r must be >= 1, got {self.eps_r}")
        if not self.h > 0.0:
            raise DomainError(f"h must be > 0, got {self.h}")
        if not self.metal_thickness >= 0.0:
            raise DomainError(f"metal_thickness must be >= 0, got {self.metal_thickness}")
        if not 0.0 < self.radiation_efficiency <= 1.0:
            raise DomainError(
                f"radiation_efficiency must lie in (0, 1], got {self.radiation_efficiency}"
            )


@dataclass(frozen=True)
class PatchDesign:
    """Synthesized patch geometry bound to its target frequency."""

    f0: float
    substrate: Substrate
    W: float
    eps_eff: float
    L_eff: float
    delta_L: float
    L: float

    def __post_init__(self) -> None:
        er = self.substrate.eps_r
        # tiny slack for rounding at the eps_r == 1 identity case
        if not 1.0 - 1e-12 <= self.eps_eff <= er + 1e-12:
            raise DomainError(f"eps_eff {self.eps_eff} outside [1, {er}]")
        if not self.L > 0.0:
            raise DomainError(f"physical length must be positive, got {self.L}")
        if abs(self.L - (self.L_eff - 2.0 * self.delta_L)) > 1e-12 * self.L_eff:
            raise DomainError("L must equal L_eff - 2*delta_L")


def _check_frequency(f0: float) -> None:
    if not f0 > 0.0 or math.isinf(f0):
        raise DomainError(f"frequency must be positive and finite, got {f0}")


def patch_width(f0: float, substrate: Substrate) -> float:
    """Patch width that gives efficient radiation at ``f0``."""
    _check_frequency(f0)
    return SPEED_OF_LIGHT / (2.0 * f0 * math.sqrt((substrate.eps_r + 1.0) / 2.0))


def effective_permittivity(substrate: Substrate, W: float) -> float:
    if not W > 0.0:
        raise DomainError(f"patch width must be > 0, got {W}")
    er, h = substrate.eps_r, substrate.h
    return (er + 1.0) / 2.0 + (er - 1.0) / 2.0 * (1.0 + 12.0 * h / W) ** -0.5


def effective_length(f0: float, eps_eff: float) -> float:
    _check_frequency(f0)
    if not eps_eff >= 1.0:
        raise DomainError(f"eps_eff must be >= 1, got {eps_eff}")
    return SPEED_OF_LIGHT / (2.0 * f0 * math.sqrt(eps_eff))


def length_extension(substrate: Substrate, W: float, eps_eff: float) -> float:
    """Fringing-field extension added at each radiating edge."""
    if not W > 0.0:
        raise DomainError(f"patch width must be > 0, got {W}")
    if not eps_eff > _DELTA_L_POLE:
        raise DomainError(f"eps_eff must exceed {_DELTA_L_POLE}, got {eps_eff}")
    h = substrate.h
    ratio = W / h
    return (
        0.412
        * h
        * (eps_eff + 0.3)
        * (ratio + 0.264)
        / ((eps_eff - _DELTA_L_POLE) * (ratio + 0.8))
    )


def synthesize_patch(f0: float, substrate: Substrate) -> PatchDesign:
    W = patch_width(f0, substrate)
    eps_eff = effective_permittivity(substrate, W)
    L_eff = effective_length(f0, eps_eff)
    delta_L = length_extension(substrate, W, eps_eff)
    L = L_eff - 2.0 * delta_L
    if L <= 0.0:
        raise DomainError(
            f"fringing extension {delta_L:.3e} m swallows the effective length "
            f"{L_eff:.3e} m; substrate too thick for {f0:.3e} Hz"
        )
    return PatchDesign(
        f0=f0, substrate=substrate, W=W, eps_eff=eps_eff, L_eff=L_eff, delta_L=delta_L, L=L
    )


@dataclass(frozen=True)
class Resonance:
    """Resonant frequency of a design under two models.

    ``canonical`` uses the fringing-corrected length and effective
    permittivity and is the exact inverse of synthesis. ``uncorrected`` is
    the bare cavity formula with the physical length and substrate
    permittivity; it runs a few percent high.
    """

    canonical: float
    uncorrected: float

    def __float__(self) -> float:
        return self.canonical


def resonant_frequency(design: PatchDesign) -> Resonance:
    mu0, eps0 = VACUUM_PERMEABILITY, VACUUM_PERMITTIVITY
    length = design.L + 2.0 * design.delta_L
    canonical = 1.0 / (2.0 * length * math.sqrt(eps0 * design.eps_eff * mu0))
    uncorrected = 1.0 / (2.0 * design.L * math.sqrt(eps0 * design.substrate.eps_r * mu0))
    return Resonance(canonical=canonical, uncorrected=uncorrected)


def bandwidth_factor(design: PatchDesign) -> float:
    """Dimensionless bandwidth figure ((er-1)/er^2) * (W/L) * (h/lambda0).

    Only ratios between designs are meaningful; there is no absolute
    proportionality constant.
    """
    er = design.substrate.eps_r
    lambda0 = SPEED_OF_LIGHT / design.f0
    return (er - 1.0) / er**2 * (design.W / design.L) * (design.substrate.h / lambda0)
