"""Text exporters (and matching readers) for patterns and S11 traces."""

from __future__ import annotations

import math

import numpy as np

from .element_pattern import RadiationPattern
from .metrics import FrequencyResponse, _cut_phi

CSV_HEADER = "theta_deg,phi_deg,intensity_db"
ZERO_TOKEN = "-inf"
# |gamma| floor for the log in .s1p files; an exact match would give -inf
_GAMMA_FLOOR = 1e-15


def _fmt_db(value: float) -> str:
    if value == 0.0:
        return ZERO_TOKEN
    text = f"{10.0 * math.log10(value):.2f}"
    return "0.00" if text == "-0.00" else text


def export_pattern_csv(pattern: RadiationPattern, cut="full") -> str:
    """Pattern samples in dB relative to the peak, theta-major.

    ``cut`` is ``"full"`` for every grid sample, or a principal-plane
    selector (``"E"``, ``"H"`` or an azimuth in radians) for the two
    half-plane columns ``phi`` and ``phi + pi``.
    """
    grid = pattern.grid
    if isinstance(cut, str) and cut.lower() == "full":
        cols = list(range(grid.phi.size))
    else:
        phi0 = _cut_phi(cut)
        cols = []
        for target in (phi0, (phi0 + math.pi) % (2 * math.pi)):
            delta = np.abs(np.angle(np.exp(1j * (grid.phi - target))))
            j = int(np.argmin(delta))
            if delta[j] > 1e-9:
                raise ValueError(f"grid has no samples at phi = {math.degrees(target):.3f} deg")
            cols.append(j)
        cols.sort()
    theta_deg = np.degrees(grid.theta)
    phi_deg = np.degrees(grid.phi)
    lines = [CSV_HEADER]
    for i, t in enumerate(theta_deg):
        for j in cols:
            lines.append(f"{t:.2f},{phi_deg[j]:.2f},{_fmt_db(pattern.intensity[i, j])}")
    return "\n".join(lines) + "\n"


def read_pattern_csv(text: str) -> np.ndarray:
    """Rows of (theta_deg, phi_deg, intensity_db); ``-inf`` maps to ``-numpy.inf``."""
    lines = text.strip().splitlines()
    if lines[0] != CSV_HEADER:
        raise ValueError(f"unexpected header {lines[0]!r}")
    rows = [[float(v) for v in line.split(",")] for line in lines[1:]]
    return np.array(rows, dtype=np.float64).reshape(-1, 3)


def _g6(x: float) -> str:
    return f"{x:#.6g}"


def export_touchstone_s1p(response: FrequencyResponse) -> str:
    """Touchstone v1 one-port file in dB/angle format.

    Magnitude and angle carry 6 significant digits; frequencies are written
    in Hz at 12 significant digits so dense sweeps keep distinct points.
    """
    lines = [f"# HZ S DB R {response.reference_impedance:g}"]
    mag = np.maximum(np.abs(response.gamma), _GAMMA_FLOOR)
    db = 20.0 * np.log10(mag)
    ang = np.degrees(np.angle(response.gamma))
    for f, d, a in zip(response.frequencies, db, ang):
        lines.append(f"{f:.12g} {_g6(d)} {_g6(a)}")
    return "\n".join(lines) + "\n"


def read_touchstone_s1p(text: str) -> tuple[float, np.ndarray, np.ndarray, np.ndarray]:
    """Minimal reader for files written by :func:`export_touchstone_s1p`.

    Returns (reference ohms, frequencies Hz, dB, angle degrees).
    """
    reference = 50.0
    rows = []
    for raw in text.splitlines():
        line = raw.split("!", 1)[0].strip()
        if not line:
            continue
        if line.startswith("#"):
            tokens = line[1:].upper().split()
            if tokens[:3] != ["HZ", "S", "DB"]:
                raise ValueError(f"unsupported option line {raw!r}")
            if "R" in tokens:
                reference = float(tokens[tokens.index("R") + 1])
            continue
        rows.append([float(v) for v in line.split()])
    data = np.array(rows, dtype=np.float64).reshape(-1, 3)
    return reference, data[:, 0], data[:, 1], data[:, 2]
