"""JSON design-spec documents.

Units in the document are engineering units (mm, GHz, ohms, degrees);
:class:`DesignSpec` stores them as given and exposes SI helpers.
Unknown keys are rejected so typos never pass silently.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

from .constants import SPEED_OF_LIGHT
from .errors import SpecParseError, SpecValidationError
from .synthesis import Substrate

DEFAULT_EFFICIENCY = 0.8
DEFAULT_METAL_THICKNESS_MM = 0.0345  # 1/2 oz rolled copper
DEFAULT_PORT_OHMS = 50.0
DEFAULT_ELEMENT_OHMS = 50.0
DEFAULT_Q = 30.0
DEFAULT_SWEEP_POINTS = 401
DEFAULT_SWEEP_SPAN = 0.1  # fraction of f0 on either side


@dataclass(frozen=True)
class SubstrateSpec:
    eps_r: float
    h_mm: float
    metal_thickness_mm: float = DEFAULT_METAL_THICKNESS_MM
    efficiency: float = DEFAULT_EFFICIENCY


@dataclass(frozen=True)
class TargetSpec:
    f0_ghz: float


@dataclass(frozen=True)
class ArraySpec:
    n: int
    surface: str
    spacing_mm: float
    radius_mm: float | None = None
    steer_theta_deg: float = 0.0


@dataclass(frozen=True)
class FeedSpec:
    port_ohms: float = DEFAULT_PORT_OHMS
    element_ohms: float = DEFAULT_ELEMENT_OHMS


@dataclass(frozen=True)
class SweepSpec:
    q_factor: float
    r_ohms: float
    f_low_ghz: float
    f_high_ghz: float
    points: int


@dataclass(frozen=True)
class DesignSpec:
    substrate: SubstrateSpec
    target: TargetSpec
    array: ArraySpec
    feed: FeedSpec
    sweep: SweepSpec

    @property
    def f0(self) -> float:
        return self.target.f0_ghz * 1e9

    def substrate_si(self) -> Substrate:
        s = self.substrate
        return Substrate(
            eps_r=s.eps_r,
            h=s.h_mm * 1e-3,
            metal_thickness=s.metal_thickness_mm * 1e-3,
            radiation_efficiency=s.efficiency,
        )

    def to_dict(self) -> dict:
        return asdict(self)


_SECTIONS = {
    "substrate": {"eps_r", "h_mm", "metal_thickness_mm", "efficiency"},
    "target": {"f0_ghz"},
    "array": {"n", "spacing_mm", "surface", "radius_mm", "steer_theta_deg"},
    "feed": {"port_ohms", "element_ohms"},
    "sweep": {"q_factor", "r_ohms", "f_low_ghz", "f_high_ghz", "points"},
}
_REQUIRED_SECTIONS = ("substrate", "target", "array")


def _number(section: dict, key: str, path: str, default=None, required: bool = False):
    if key not in section:
        if required:
            raise SpecValidationError(f"{path}.{key}", "is required")
        return default
    value = section[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SpecValidationError(f"{path}.{key}", f"must be a number, got {value!r}")
    if not math.isfinite(value):
        raise SpecValidationError(f"{path}.{key}", "must be finite")
    return float(value)


def _require(cond: bool, field: str, constraint: str) -> None:
    if not cond:
        raise SpecValidationError(field, f"must satisfy {constraint}")


def _section(doc: dict, name: str) -> dict:
    if name not in doc:
        if name in _REQUIRED_SECTIONS:
            raise SpecValidationError(name, "section is required")
        return {}
    sec = doc[name]
    if not isinstance(sec, dict):
        raise SpecValidationError(name, "must be an object")
    for key in sec:
        if key not in _SECTIONS[name]:
            raise SpecValidationError(f"{name}.{key}", "unknown key")
    return sec


def validate_spec(doc) -> DesignSpec:
    """Validate a decoded document and apply defaults."""
    if not isinstance(doc, dict):
        raise SpecValidationError("<root>", "document must be a JSON object")
    for key in doc:
        if key not in _SECTIONS:
            raise SpecValidationError(key, "unknown key")

    sub = _section(doc, "substrate")
    eps_r = _number(sub, "eps_r", "substrate", required=True)
    _require(eps_r >= 1, "substrate.eps_r", "eps_r >= 1")
    h_mm = _number(sub, "h_mm", "substrate", required=True)
    _require(h_mm > 0, "substrate.h_mm", "h_mm > 0")
    t_mm = _number(sub, "metal_thickness_mm", "substrate", DEFAULT_METAL_THICKNESS_MM)
    _require(t_mm >= 0, "substrate.metal_thickness_mm", "metal_thickness_mm >= 0")
    eff = _number(sub, "efficiency", "substrate", DEFAULT_EFFICIENCY)
    _require(0 < eff <= 1, "substrate.efficiency", "0 < efficiency <= 1")

    tgt = _section(doc, "target")
    f0_ghz = _number(tgt, "f0_ghz", "target", required=True)
    _require(f0_ghz > 0, "target.f0_ghz", "f0_ghz > 0")

    arr = _section(doc, "array")
    n = _number(arr, "n", "array", required=True)
    _require(n >= 1 and n == int(n), "array.n", "n is an integer >= 1")
    surface = arr.get("surface")
    if surface not in ("planar", "cylindrical"):
        raise SpecValidationError("array.surface", 'must be "planar" or "cylindrical"')
    spacing = _number(arr, "spacing_mm", "array", SPEED_OF_LIGHT / (2 * f0_ghz * 1e9) * 1e3)
    _require(spacing > 0, "array.spacing_mm", "spacing_mm > 0")
    radius = _number(arr, "radius_mm", "array")
    if surface == "cylindrical":
        if radius is None:
            raise SpecValidationError("array.radius_mm", "is required when surface is cylindrical")
        _require(radius > 0, "array.radius_mm", "radius_mm > 0")
        _require(
            (n - 1) * spacing < 2 * math.pi * radius,
            "array.radius_mm",
            "array arc shorter than the cylinder circumference",
        )
    elif radius is not None:
        raise SpecValidationError("array.radius_mm", "is only allowed when surface is cylindrical")
    steer = _number(arr, "steer_theta_deg", "array", 0.0)
    _require(-90 < steer < 90, "array.steer_theta_deg", "-90 < steer_theta_deg < 90")

    fd = _section(doc, "feed")
    port = _number(fd, "port_ohms", "feed", DEFAULT_PORT_OHMS)
    _require(port > 0, "feed.port_ohms", "port_ohms > 0")
    elem = _number(fd, "element_ohms", "feed", DEFAULT_ELEMENT_OHMS)
    _require(elem > 0, "feed.element_ohms", "element_ohms > 0")

    sw = _section(doc, "sweep")
    q = _number(sw, "q_factor", "sweep", DEFAULT_Q)
    _require(q > 0, "sweep.q_factor", "q_factor > 0")
    r = _number(sw, "r_ohms", "sweep", elem)
    _require(r > 0, "sweep.r_ohms", "r_ohms > 0")
    f_low = _number(sw, "f_low_ghz", "sweep", f0_ghz * (1 - DEFAULT_SWEEP_SPAN))
    f_high = _number(sw, "f_high_ghz", "sweep", f0_ghz * (1 + DEFAULT_SWEEP_SPAN))
    _require(f_low > 0, "sweep.f_low_ghz", "f_low_ghz > 0")
    _require(f_high > f_low, "sweep.f_high_ghz", "f_high_ghz > f_low_ghz")
    points = _number(sw, "points", "sweep", DEFAULT_SWEEP_POINTS)
    _require(points >= 3 and points == int(points), "sweep.points", "points is an integer >= 3")

    return DesignSpec(
        substrate=SubstrateSpec(eps_r, h_mm, t_mm, eff),
        target=TargetSpec(f0_ghz),
        array=ArraySpec(int(n), surface, spacing, radius, steer),
        feed=FeedSpec(port, elem),
        sweep=SweepSpec(q, r, f_low, f_high, int(points)),
    )


def parse_spec(document: str) -> DesignSpec:
    """Parse and validate a JSON design spec."""
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise SpecParseError(exc.msg, exc.lineno, exc.colno) from exc
    return validate_spec(doc)
