"""Planar and cylindrically bent linear arrays.

Arrays run along the x axis with boresight +z. The cylindrical layout bends
the line around a cylinder whose axis is parallel to y and whose apex sits
at the origin, so a very large radius reproduces the planar layout.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .constants import wavelength, wavenumber
from .element_pattern import (
    BORESIGHT,
    LENGTH_AXIS,
    IsotropicElement,
    PatchElement,
    RadiationPattern,
    SphericalGrid,
)
from .errors import DomainError


class Surface(enum.Enum):
    PLANAR = "planar"
    CYLINDRICAL = "cylindrical"


@dataclass(frozen=True, eq=False)
class ElementPlacement:
    """Phase center and orientation of one element.

    ``length_axis`` is the patch's resonant (E-plane) direction; together
    with ``normal`` it fixes the element frame.
    """

    position: np.ndarray
    normal: np.ndarray
    length_axis: np.ndarray = LENGTH_AXIS

    def __post_init__(self) -> None:
        for name in ("position", "normal", "length_axis"):
            v = np.asarray(getattr(self, name), dtype=np.float64)
            if v.shape != (3,):
                raise DomainError(f"{name} must be a 3-vector")
            v.setflags(write=False)
            object.__setattr__(self, name, v)
        if abs(np.linalg.norm(self.normal) - 1.0) > 1e-12:
            raise DomainError("normal must be a unit vector")
        if abs(np.linalg.norm(self.length_axis) - 1.0) > 1e-12:
            raise DomainError("length_axis must be a unit vector")
        if abs(float(self.normal @ self.length_axis)) > 1e-12:
            raise DomainError("length_axis must be orthogonal to the normal")

    @property
    def width_axis(self) -> np.ndarray:
        return np.cross(self.length_axis, self.normal)


@dataclass(frozen=True, eq=False)
class ArrayLayout:
    elements: tuple[ElementPlacement, ...]
    surface: Surface
    spacing: float
    cylinder_radius: float | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "elements", tuple(self.elements))
        if not self.elements:
            raise DomainError("layout needs at least one element")
        if not self.spacing > 0:
            raise DomainError("spacing must be positive")
        if self.surface is Surface.CYLINDRICAL:
            if self.cylinder_radius is None or not self.cylinder_radius > 0:
                raise DomainError("cylindrical layout requires cylinder_radius > 0")

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def positions(self) -> np.ndarray:
        return np.array([e.position for e in self.elements])

    @property
    def normals(self) -> np.ndarray:
        return np.array([e.normal for e in self.elements])

    @property
    def length_axes(self) -> np.ndarray:
        return np.array([e.length_axis for e in self.elements])

    @property
    def width_axes(self) -> np.ndarray:
        return np.array([e.width_axis for e in self.elements])

    @property
    def extent(self) -> float:
        """Straight-line distance between the outermost elements."""
        p = self.positions
        return float(np.linalg.norm(p[-1] - p[0]))


@dataclass(frozen=True, eq=False)
class Excitation:
    amplitudes: np.ndarray
    phases: np.ndarray

    def __post_init__(self) -> None:
        a = np.asarray(self.amplitudes, dtype=np.float64).ravel()
        p = np.asarray(self.phases, dtype=np.float64).ravel()
        if a.shape != p.shape:
            raise DomainError("amplitudes and phases must have equal length")
        if np.any(a < 0) or not np.any(a > 0):
            raise DomainError("amplitudes must be nonnegative with at least one positive")
        object.__setattr__(self, "amplitudes", a)
        object.__setattr__(self, "phases", p)

    @property
    def weights(self) -> np.ndarray:
        return self.amplitudes * np.exp(1j * self.phases)

    def __len__(self) -> int:
        return self.amplitudes.size


def _check_count(n: int) -> None:
    if int(n) != n or n < 1:
        raise DomainError(f"element count must be a positive integer, got {n}")


def _centered_offsets(n: int, spacing: float) -> np.ndarray:
    return (np.arange(n) - (n - 1) / 2.0) * spacing


def planar_layout(n: int, spacing: float) -> ArrayLayout:
    """``n`` coplanar elements along x, centered on the origin."""
    _check_count(n)
    if not spacing > 0:
        raise DomainError("spacing must be positive")
    elements = [
        ElementPlacement(np.array([x, 0.0, 0.0]), BORESIGHT) for x in _centered_offsets(n, spacing)
    ]
    return ArrayLayout(tuple(elements), Surface.PLANAR, spacing)


def cylindrical_layout(n: int, arc_spacing: float, radius: float) -> ArrayLayout:
    """``n`` elements equally spaced in arc length on a cylinder of ``radius``."""
    _check_count(n)
    if not (arc_spacing > 0 and radius > 0):
        raise DomainError("arc spacing and radius must be positive")
    if (n - 1) * arc_spacing >= 2.0 * math.pi * radius:
        raise DomainError(
            f"array arc {(n - 1) * arc_spacing:.4g} m exceeds the circumference "
            f"{2 * math.pi * radius:.4g} m"
        )
    elements = []
    for angle in cylinder_angles(n, arc_spacing, radius):
        s, c = math.sin(angle), math.cos(angle)
        position = np.array([radius * s, 0.0, radius * (c - 1.0)])
        elements.append(ElementPlacement(position, np.array([s, 0.0, c])))
    return ArrayLayout(tuple(elements), Surface.CYLINDRICAL, arc_spacing, radius)


def cylinder_angles(n: int, arc_spacing: float, radius: float) -> np.ndarray:
    """Angular element positions around the cylinder axis, radians."""
    return _centered_offsets(n, arc_spacing / radius)


def half_wavelength(frequency: float) -> float:
    return 0.5 * wavelength(frequency)


def _unit(v) -> np.ndarray:
    v = np.asarray(v, dtype=np.float64)
    norm = np.linalg.norm(v, axis=-1, keepdims=True)
    if np.any(np.abs(norm - 1.0) > 1e-9):
        raise DomainError("direction must be a unit vector")
    return v


def uniform_excitation(layout: ArrayLayout, amplitudes=None) -> Excitation:
    a = np.ones(len(layout)) if amplitudes is None else np.asarray(amplitudes, dtype=np.float64)
    if a.size != len(layout):
        raise DomainError("one amplitude per element required")
    return Excitation(a, np.zeros(len(layout)))


def cophase_excitation(layout: ArrayLayout, steer_direction, frequency: float) -> Excitation:
    """Uniform amplitudes phased so all elements add in step toward ``steer_direction``."""
    u = _unit(steer_direction)
    phases = -wavenumber(frequency) * (layout.positions @ u)
    return Excitation(np.ones(len(layout)), phases)


def steer_direction(theta: float, phi: float = 0.0) -> np.ndarray:
    st = math.sin(theta)
    return np.array([st * math.cos(phi), st * math.sin(phi), math.cos(theta)])


def array_factor(layout: ArrayLayout, excitation: Excitation, direction, frequency: float):
    """Complex array factor; ``direction`` may be one unit vector or a stack of them."""
    if len(excitation) != len(layout):
        raise DomainError("excitation length does not match layout")
    d = _unit(direction)
    phase = wavenumber(frequency) * (d @ layout.positions.T)
    return np.exp(1j * phase) @ excitation.weights


def _resolve_element(element, layout: ArrayLayout, frequency: float):
    if isinstance(element, RadiationPattern):
        if layout.surface is not Surface.PLANAR:
            raise DomainError("a sampled element pattern cannot be rotated onto a curved surface")
        if not math.isclose(element.frequency, frequency, rel_tol=1e-12):
            raise DomainError(
                f"element pattern frequency {element.frequency} Hz differs from {frequency} Hz"
            )
        return element
    if isinstance(element, (PatchElement, IsotropicElement)):
        return element
    raise DomainError(f"unsupported element model {element!r}")


def total_field(
    layout: ArrayLayout,
    excitation: Excitation,
    element,
    grid: SphericalGrid,
    frequency: float,
) -> np.ndarray:
    """Complex co-pol field of the whole array on ``grid`` (unnormalized)."""
    if len(excitation) != len(layout):
        raise DomainError("excitation length does not match layout")
    if not frequency > 0:
        raise DomainError("frequency must be positive")
    element = _resolve_element(element, layout, frequency)
    dirs = grid.directions().reshape(-1, 3)
    if isinstance(element, RadiationPattern):
        if element.grid.shape != grid.shape or not (
            np.array_equal(element.grid.theta, grid.theta)
            and np.array_equal(element.grid.phi, grid.phi)
        ):
            raise DomainError("element pattern must be sampled on the same grid")
        af = array_factor(layout, excitation, dirs, frequency).reshape(grid.shape)
        return np.sqrt(element.intensity) * af
    kind, hl, hw = element.kernel_args(frequency)
    out = kernels.array_field(
        dirs,
        layout.positions,
        layout.normals,
        layout.length_axes,
        layout.width_axes,
        excitation.weights,
        wavenumber(frequency),
        hl,
        hw,
        kind,
    )
    return out.reshape(grid.shape)


def total_pattern(
    layout: ArrayLayout,
    excitation: Excitation,
    element,
    grid: SphericalGrid | None = None,
    frequency: float | None = None,
) -> RadiationPattern:
    """Normalized array pattern.

    Every element field is evaluated in its own frame and summed coherently.
    For a planar layout this equals element intensity times ``|AF|**2``.
    ``element`` is a :class:`PatchElement`, an :class:`IsotropicElement`, or
    (planar layouts only) a sampled :class:`RadiationPattern` at the same
    frequency.
    """
    grid = grid if grid is not None else SphericalGrid.uniform()
    if frequency is None:
        if not isinstance(element, RadiationPattern):
            raise DomainError("frequency is required for analytic element models")
        frequency = element.frequency
    f = total_field(layout, excitation, element, grid, frequency)
    return RadiationPattern.from_raw(grid, np.abs(f) ** 2, frequency, f)
