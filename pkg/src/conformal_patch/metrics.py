"""Figures of merit: directivity, gain, beamwidth, sidelobes, match, bandwidth."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .element_pattern import E_PLANE_PHI, H_PLANE_PHI, RadiationPattern
from .errors import (
    BeamwidthUndefined,
    DomainError,
    NoBandError,
    NoSidelobe,
)
from .synthesis import PatchDesign, resonant_frequency


def to_db(x: float) -> float:
    return 10.0 * math.log10(x)


@dataclass(frozen=True)
class PatternMetrics:
    directivity: float
    gain: float
    hpbw_e_plane: float | None  # degrees
    hpbw_h_plane: float | None  # degrees
    sidelobe_level: float | None  # dB relative to the main lobe
    main_lobe_direction: tuple[float, float]  # (theta, phi) radians

    @property
    def directivity_dbi(self) -> float:
        return to_db(self.directivity)

    @property
    def gain_db(self) -> float:
        return to_db(self.gain)


@dataclass(frozen=True, eq=False)
class FrequencyResponse:
    frequencies: np.ndarray
    gamma: np.ndarray
    reference_impedance: float

    def __post_init__(self) -> None:
        f = np.asarray(self.frequencies, dtype=np.float64)
        g = np.asarray(self.gamma, dtype=np.complex128)
        if f.shape != g.shape or f.ndim != 1:
            raise DomainError("frequencies and gamma must be 1-D of equal length")
        if np.any(np.diff(f) <= 0):
            raise DomainError("frequencies must be strictly increasing")
        if np.any(np.abs(g) > 1.0 + 1e-12):
            raise DomainError("|gamma| exceeds 1; response is not passive")
        if not self.reference_impedance > 0:
            raise DomainError("reference impedance must be positive")
        object.__setattr__(self, "frequencies", f)
        object.__setattr__(self, "gamma", g)

    @property
    def s11_db(self) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return 20.0 * np.log10(np.abs(self.gamma))

    @property
    def vswr(self) -> np.ndarray:
        mag = np.abs(self.gamma)
        with np.errstate(divide="ignore"):
            return (1.0 + mag) / (1.0 - mag)


# -- quadrature -------------------------------------------------------------


def _trapezoid_weights(x: np.ndarray) -> np.ndarray:
    w = np.zeros_like(x)
    dx = np.diff(x)
    w[:-1] += dx / 2
    w[1:] += dx / 2
    return w


def _periodic_weights(phi: np.ndarray) -> np.ndarray:
    # trapezoid over [phi_0, phi_0 + 2*pi) with wrap-around
    if phi.size == 1:
        return np.array([2.0 * math.pi])
    gaps = np.diff(np.append(phi, phi[0] + 2.0 * math.pi))
    return 0.5 * (gaps + np.roll(gaps, 1))


def radiated_power(pattern: RadiationPattern) -> float:
    """Integral of ``U sin(theta)`` over the sampled solid angle."""
    theta, phi = pattern.grid.theta, pattern.grid.phi
    wt = _trapezoid_weights(theta) * np.sin(theta)
    wp = _periodic_weights(phi)
    return float(wt @ pattern.intensity @ wp)


def directivity(pattern: RadiationPattern) -> float:
    power = radiated_power(pattern)
    if not power > 0:
        raise DomainError("pattern radiates no power")
    return 4.0 * math.pi * float(pattern.intensity.max()) / power


def gain(pattern: RadiationPattern, efficiency: float = 0.8) -> float:
    if not 0.0 < efficiency <= 1.0:
        raise DomainError(f"efficiency must lie in (0, 1], got {efficiency}")
    return efficiency * directivity(pattern)


# -- principal-plane cuts ---------------------------------------------------


def _cut_phi(cut) -> float:
    if isinstance(cut, str):
        key = cut.upper()
        if key == "E":
            return E_PLANE_PHI
        if key == "H":
            return H_PLANE_PHI
        raise DomainError(f"unknown cut {cut!r}; use 'E', 'H' or an azimuth in radians")
    return float(cut) % (2.0 * math.pi)


def pattern_cut(pattern: RadiationPattern, cut) -> tuple[np.ndarray, np.ndarray]:
    """Signed-angle cut through boresight.

    Joins the half-planes ``phi`` and ``phi + pi`` into one trace of polar
    angle in degrees (negative on the ``phi + pi`` side) and intensity.
    """
    phi0 = _cut_phi(cut)
    grid = pattern.grid

    def column(phi):
        delta = np.abs(np.angle(np.exp(1j * (grid.phi - phi))))
        j = int(np.argmin(delta))
        if delta[j] > 1e-9:
            raise DomainError(f"grid has no samples at phi = {math.degrees(phi):.3f} deg")
        return j

    j_pos, j_neg = column(phi0), column(phi0 + math.pi)
    deg = np.degrees(grid.theta)
    angles = np.concatenate([-deg[:0:-1], deg])
    values = np.concatenate(
        [pattern.intensity[:0:-1, j_neg], pattern.intensity[:, j_pos]]
    )
    return angles, values


def _crossing(x0, x1, y0, y1, level):
    return x0 + (level - y0) * (x1 - x0) / (y1 - y0)


def _main_lobe_bounds(values: np.ndarray, peak: int) -> tuple[int, int]:
    """Indices of the first minima on either side of ``peak``."""
    lo = peak
    while lo > 0 and values[lo - 1] <= values[lo]:
        lo -= 1
    hi = peak
    while hi < values.size - 1 and values[hi + 1] <= values[hi]:
        hi += 1
    return lo, hi


def half_power_beamwidth(pattern: RadiationPattern, cut="H") -> float:
    """Width in degrees between the -3 dB points around the main lobe of a cut."""
    angles, values = pattern_cut(pattern, cut)
    peak = int(np.argmax(values))
    level = 0.5 * values[peak]
    lo = peak
    while lo > 0 and values[lo] > level:
        lo -= 1
    hi = peak
    while hi < values.size - 1 and values[hi] > level:
        hi += 1
    if values[lo] > level or values[hi] > level:
        raise BeamwidthUndefined("no -3 dB crossing on both sides of the main lobe")
    left = _crossing(angles[lo], angles[lo + 1], values[lo], values[lo + 1], level)
    right = _crossing(angles[hi - 1], angles[hi], values[hi - 1], values[hi], level)
    return float(right - left)


def sidelobe_level(pattern: RadiationPattern, cut="H") -> float:
    """Strongest interior local maximum outside the main lobe, in dB below the peak."""
    angles, values = pattern_cut(pattern, cut)
    peak = int(np.argmax(values))
    lo, hi = _main_lobe_bounds(values, peak)
    inner = values[1:-1]
    is_max = (inner > values[:-2]) & (inner >= values[2:])
    idx = np.nonzero(is_max)[0] + 1
    idx = idx[(idx < lo) | (idx > hi)]
    if idx.size == 0:
        raise NoSidelobe("cut has no local maximum outside the main lobe")
    strongest = float(values[idx].max())
    if strongest <= 0:
        raise NoSidelobe("sidelobes are identically zero")
    return 10.0 * math.log10(strongest / float(values[peak]))


def pattern_metrics(pattern: RadiationPattern, efficiency: float = 0.8) -> PatternMetrics:
    """All pattern figures; undefined beamwidths or sidelobes come back as ``None``."""

    def optional(fn, *args):
        try:
            return fn(*args)
        except (BeamwidthUndefined, NoSidelobe):
            return None

    i, j = pattern.peak_index
    d = directivity(pattern)
    return PatternMetrics(
        directivity=d,
        gain=gain(pattern, efficiency),
        hpbw_e_plane=optional(half_power_beamwidth, pattern, "E"),
        hpbw_h_plane=optional(half_power_beamwidth, pattern, "H"),
        sidelobe_level=optional(sidelobe_level, pattern, "H"),
        main_lobe_direction=(float(pattern.grid.theta[i]), float(pattern.grid.phi[j])),
    )


# -- match -----------------------------------------------------------------


def vswr_from_reflection(gamma_mag: float) -> float:
    if not 0.0 <= gamma_mag < 1.0:
        raise DomainError(f"|gamma| must lie in [0, 1), got {gamma_mag}")
    return (1.0 + gamma_mag) / (1.0 - gamma_mag)


def reflection_from_vswr(vswr: float) -> float:
    if not vswr >= 1.0:
        raise DomainError(f"VSWR must be >= 1, got {vswr}")
    return (vswr - 1.0) / (vswr + 1.0)


def return_loss_db(gamma_mag: float) -> float:
    """Return loss as a positive number of dB; ``inf`` for a perfect match."""
    if not 0.0 <= gamma_mag <= 1.0:
        raise DomainError(f"|gamma| must lie in [0, 1], got {gamma_mag}")
    if gamma_mag == 0.0:
        return math.inf
    return -20.0 * math.log10(gamma_mag)


def reflection_from_return_loss(rl_db: float) -> float:
    return 10.0 ** (-rl_db / 20.0)


def resonator_impedance(frequencies, f_r: float, quality_factor: float, resistance: float):
    f = np.asarray(frequencies, dtype=np.float64)
    return resistance / (1.0 + 1j * quality_factor * (f / f_r - f_r / f))


def resonator_response(
    f_r: float,
    quality_factor: float,
    resistance: float,
    reference: float,
    band: tuple[float, float],
    points: int,
) -> FrequencyResponse:
    """Reflection of a parallel resonator swept linearly across ``band``."""
    f_low, f_high = band
    if not quality_factor > 0 or not resistance > 0 or not reference > 0:
        raise DomainError("Q, resistance and reference impedance must be positive")
    if not 0 < f_low < f_high:
        raise DomainError(f"invalid band ({f_low}, {f_high})")
    if not f_low <= f_r <= f_high:
        raise DomainError(f"band ({f_low}, {f_high}) does not contain resonance {f_r}")
    if int(points) != points or points < 3:
        raise DomainError("at least 3 sweep points required")
    f = np.linspace(f_low, f_high, int(points))
    z = resonator_impedance(f, f_r, quality_factor, resistance)
    return FrequencyResponse(f, (z - reference) / (z + reference), reference)


def resonator_sweep(
    design: PatchDesign,
    quality_factor: float,
    input_resistance_at_resonance: float,
    reference: float = 50.0,
    band: tuple[float, float] | None = None,
    points: int = 401,
) -> FrequencyResponse:
    """S11 of the patch modeled as a parallel resonator at its canonical resonance.

    ``band`` defaults to +/-10 % around the resonance.
    """
    f_r = resonant_frequency(design).canonical
    if band is None:
        band = (0.9 * f_r, 1.1 * f_r)
    return resonator_response(
        f_r, quality_factor, input_resistance_at_resonance, reference, band, points
    )


def bandwidth_minus_10db(response: FrequencyResponse, threshold_db: float = -10.0) -> float:
    """Width of the band around the deepest dip where S11 stays below ``threshold_db``."""
    f = response.frequencies
    db = response.s11_db
    low = int(np.argmin(db))
    if not db[low] < threshold_db:
        raise NoBandError(f"trace never drops below {threshold_db} dB")
    lo = low
    while lo > 0 and db[lo] < threshold_db:
        lo -= 1
    hi = low
    while hi < db.size - 1 and db[hi] < threshold_db:
        hi += 1
    if db[lo] < threshold_db or db[hi] < threshold_db:
        raise NoBandError("band extends past the sweep edge")
    # -inf at an exact match sample is fine: neighbors bracket the crossings
    f_lower = _crossing(f[lo], f[lo + 1], db[lo], db[lo + 1], threshold_db)
    f_upper = _crossing(f[hi - 1], f[hi], db[hi - 1], db[hi], threshold_db)
    return float(f_upper - f_lower)
