"""Sampled radiation patterns and single-element models.

The patch is modeled as two radiating slots a distance ``L_eff`` apart over
an infinite ground plane. In the element's local frame (normal ``n``,
resonant-length axis ``a``, width axis ``b``) the co-polar far field is

    cos(k*L_eff/2 * a) * sinc(k*W/2 * b) * sqrt(1 - b**2)

for directions above the ground plane and zero below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .constants import wavenumber
from .errors import DomainError
from .synthesis import PatchDesign

_EPS_ANGLE = 1e-12


@dataclass(frozen=True, eq=False)
class SphericalGrid:
    """Tensor-product grid of polar angles ``theta`` and azimuths ``phi`` (radians).

    ``theta`` normally spans the upper hemisphere [0, pi/2]; full-sphere
    grids reaching pi are accepted for calibration patterns.
    """

    theta: np.ndarray
    phi: np.ndarray

    def __post_init__(self) -> None:
        theta = np.asarray(self.theta, dtype=np.float64)
        phi = np.asarray(self.phi, dtype=np.float64)
        if theta.ndim != 1 or phi.ndim != 1 or theta.size < 2 or phi.size < 1:
            raise DomainError("theta and phi must be 1-D with at least 2 and 1 samples")
        if np.any(np.diff(theta) <= 0) or np.any(np.diff(phi) <= 0):
            raise DomainError("grid samples must be strictly increasing")
        if theta[0] != 0.0:
            raise DomainError("theta samples must start at boresight (0)")
        if theta[-1] > math.pi + _EPS_ANGLE:
            raise DomainError("theta samples must lie in [0, pi]")
        if phi[0] < 0.0 or phi[-1] >= 2.0 * math.pi:
            raise DomainError("phi samples must lie in [0, 2*pi)")
        theta.setflags(write=False)
        phi.setflags(write=False)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)

    @classmethod
    def uniform(cls, step_deg: float = 1.0, full_sphere: bool = False) -> SphericalGrid:
        """Regular grid with ``step_deg`` spacing in both angles."""
        if not step_deg > 0:
            raise DomainError("step must be positive")
        theta_max = 180.0 if full_sphere else 90.0
        n_theta = int(round(theta_max / step_deg))
        n_phi = int(round(360.0 / step_deg))
        if not math.isclose(n_theta * step_deg, theta_max) or not math.isclose(
            n_phi * step_deg, 360.0
        ):
            raise DomainError(f"step {step_deg} deg must divide {theta_max} and 360")
        theta = np.deg2rad(np.arange(n_theta + 1) * step_deg)
        phi = np.deg2rad(np.arange(n_phi) * step_deg)
        return cls(theta, phi)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.theta.size, self.phi.size)

    def directions(self) -> np.ndarray:
        """Unit vectors with shape ``(n_theta, n_phi, 3)``."""
        t = self.theta[:, None]
        p = self.phi[None, :]
        st = np.sin(t)
        return np.stack(
            np.broadcast_arrays(st * np.cos(p), st * np.sin(p), np.cos(t)), axis=-1
        )

    def nearest_index(self, direction) -> tuple[int, int]:
        """Grid index of the sample closest in angle to ``direction``."""
        d = np.asarray(direction, dtype=np.float64)
        dots = self.directions() @ (d / np.linalg.norm(d))
        return np.unravel_index(int(np.argmax(dots)), self.shape)


@dataclass(frozen=True, eq=False)
class RadiationPattern:
    """Normalized radiation intensity sampled on a :class:`SphericalGrid`.

    ``intensity[i, j]`` belongs to ``(grid.theta[i], grid.phi[j])``; the peak
    is exactly 1. Directions outside the grid (below the ground plane) are
    taken as zero.
    """

    grid: SphericalGrid
    intensity: np.ndarray
    frequency: float
    field: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        u = np.asarray(self.intensity, dtype=np.float64)
        if u.shape != self.grid.shape:
            raise DomainError(f"intensity shape {u.shape} != grid shape {self.grid.shape}")
        if np.any(u < 0) or not np.all(np.isfinite(u)):
            raise DomainError("intensity must be finite and nonnegative")
        u.setflags(write=False)
        object.__setattr__(self, "intensity", u)

    @classmethod
    def from_raw(cls, grid: SphericalGrid, raw, frequency: float, field=None) -> RadiationPattern:
        """Normalize ``raw`` intensity to a unit peak."""
        raw = np.asarray(raw, dtype=np.float64)
        peak = raw.max()
        if not peak > 0:
            raise DomainError("pattern is identically zero")
        if field is not None:
            field = np.asarray(field) / math.sqrt(peak)
        return cls(grid, raw / peak, frequency, field)

    @property
    def peak_index(self) -> tuple[int, int]:
        return np.unravel_index(int(np.argmax(self.intensity)), self.grid.shape)


class IsotropicElement:
    """Point source with unit field; optionally blocked below its ground plane."""

    def __init__(self, ground_plane: bool = True) -> None:
        self.ground_plane = ground_plane

    def kernel_args(self, frequency: float) -> tuple[int, float, float]:
        kind = kernels.ISOTROPIC_GROUNDED if self.ground_plane else kernels.ISOTROPIC
        return kind, 0.0, 0.0

    def __repr__(self) -> str:
        return f"IsotropicElement(ground_plane={self.ground_plane})"


class PatchElement:
    """Two-slot patch radiator with slot separation ``length_eff`` and width ``width``."""

    def __init__(self, length_eff: float, width: float) -> None:
        if not (length_eff > 0 and width > 0):
            raise DomainError("patch dimensions must be positive")
        self.length_eff = length_eff
        self.width = width

    @classmethod
    def from_design(cls, design: PatchDesign) -> PatchElement:
        return cls(design.L_eff, design.W)

    def kernel_args(self, frequency: float) -> tuple[int, float, float]:
        k = wavenumber(frequency)
        return kernels.PATCH, 0.5 * k * self.length_eff, 0.5 * k * self.width

    def __repr__(self) -> str:
        return f"PatchElement(length_eff={self.length_eff!r}, width={self.width!r})"


# Local frame of an unrotated element: boresight +z, resonant length along y.
# Arrays are laid out along x, so the x-z plane is the H-plane and the y-z
# plane the E-plane.
BORESIGHT = np.array([0.0, 0.0, 1.0])
LENGTH_AXIS = np.array([0.0, 1.0, 0.0])
WIDTH_AXIS = np.cross(LENGTH_AXIS, BORESIGHT)

E_PLANE_PHI = math.pi / 2
H_PLANE_PHI = 0.0


def element_field(element, grid: SphericalGrid, frequency: float) -> np.ndarray:
    """Complex field of one unrotated element at the origin, shape ``grid.shape``."""
    kind, hl, hw = element.kernel_args(frequency)
    dirs = grid.directions().reshape(-1, 3)
    out = kernels.array_field(
        dirs,
        np.zeros((1, 3)),
        BORESIGHT[None, :],
        LENGTH_AXIS[None, :],
        WIDTH_AXIS[None, :],
        np.ones(1, dtype=np.complex128),
        wavenumber(frequency),
        hl,
        hw,
        kind,
    )
    return out.reshape(grid.shape)


def patch_element_pattern(
    design: PatchDesign, grid: SphericalGrid | None = None, frequency: float | None = None
) -> RadiationPattern:
    """Normalized intensity of a single patch; ``frequency`` defaults to ``design.f0``."""
    grid = grid if grid is not None else SphericalGrid.uniform()
    frequency = design.f0 if frequency is None else frequency
    f = element_field(PatchElement.from_design(design), grid, frequency)
    return RadiationPattern.from_raw(grid, np.abs(f) ** 2, frequency, f)


def isotropic_hemisphere_pattern(
    grid: SphericalGrid | None = None, frequency: float = 0.0, full_sphere: bool = False
) -> RadiationPattern:
    """Unit intensity over the upper hemisphere (or the whole sphere)."""
    grid = grid if grid is not None else SphericalGrid.uniform(full_sphere=full_sphere)
    f = element_field(IsotropicElement(ground_plane=not full_sphere), grid, max(frequency, 1.0))
    return RadiationPattern.from_raw(grid, np.abs(f) ** 2, frequency, f)
