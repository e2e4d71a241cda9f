"""End-to-end design run: synthesis, array, feed, pattern metrics, sweep."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .array_geometry import (
    ArrayLayout,
    cophase_excitation,
    cylindrical_layout,
    planar_layout,
    steer_direction,
    total_pattern,
)
from .element_pattern import PatchElement, RadiationPattern, SphericalGrid
from .errors import MetricUndefined
from .feed_network import FeedTree, build_corporate_feed, feed_input_reflection
from .metrics import (
    FrequencyResponse,
    PatternMetrics,
    bandwidth_minus_10db,
    pattern_metrics,
    resonator_sweep,
    return_loss_db,
)
from .specfile import DesignSpec
from .synthesis import PatchDesign, bandwidth_factor, resonant_frequency, synthesize_patch


class DesignStageError(ValueError):
    """A module error raised while running one stage of the design flow."""

    def __init__(self, stage: str, cause: Exception) -> None:
        self.stage = stage
        self.cause = cause
        super().__init__(f"{stage} stage failed: {cause}")


def _stage(name, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except ValueError as exc:
        raise DesignStageError(name, exc) from exc


def design_patch(spec: DesignSpec) -> PatchDesign:
    return _stage("synthesis", synthesize_patch, spec.f0, spec.substrate_si())


def design_layout(spec: DesignSpec) -> ArrayLayout:
    a = spec.array
    if a.surface == "cylindrical":
        return _stage("array", cylindrical_layout, a.n, a.spacing_mm * 1e-3, a.radius_mm * 1e-3)
    return _stage("array", planar_layout, a.n, a.spacing_mm * 1e-3)


def design_pattern(spec: DesignSpec, design: PatchDesign, grid: SphericalGrid | None = None) -> RadiationPattern:
    layout = design_layout(spec)
    steer = steer_direction(math.radians(spec.array.steer_theta_deg))
    excitation = _stage("array", cophase_excitation, layout, steer, spec.f0)
    return _stage(
        "pattern", total_pattern, layout, excitation, PatchElement.from_design(design), grid, spec.f0
    )


def design_feed(spec: DesignSpec) -> FeedTree:
    return _stage(
        "feed",
        build_corporate_feed,
        spec.array.n,
        spec.feed.element_ohms,
        spec.feed.port_ohms,
        spec.substrate_si(),
        spec.array.spacing_mm * 1e-3,
        spec.f0,
    )


def design_sweep(spec: DesignSpec, design: PatchDesign) -> FrequencyResponse:
    s = spec.sweep
    return _stage(
        "sweep",
        resonator_sweep,
        design,
        s.q_factor,
        s.r_ohms,
        spec.feed.port_ohms,
        (s.f_low_ghz * 1e9, s.f_high_ghz * 1e9),
        s.points,
    )


@dataclass(frozen=True)
class DesignRun:
    spec: DesignSpec
    design: PatchDesign
    layout: ArrayLayout
    feed: FeedTree
    pattern: RadiationPattern
    metrics: PatternMetrics
    response: FrequencyResponse


def execute(spec: DesignSpec) -> DesignRun:
    design = design_patch(spec)
    pattern = design_pattern(spec, design)
    metrics = _stage("metrics", pattern_metrics, pattern, spec.substrate.efficiency)
    return DesignRun(
        spec=spec,
        design=design,
        layout=design_layout(spec),
        feed=design_feed(spec),
        pattern=pattern,
        metrics=metrics,
        response=design_sweep(spec, design),
    )


def _mm(x: float) -> float:
    return x * 1e3


def patch_summary(design: PatchDesign) -> dict:
    res = resonant_frequency(design)
    return {
        "f0_hz": design.f0,
        "W_mm": _mm(design.W),
        "L_mm": _mm(design.L),
        "L_eff_mm": _mm(design.L_eff),
        "delta_L_mm": _mm(design.delta_L),
        "eps_eff": design.eps_eff,
        "resonance_hz": res.canonical,
        "resonance_uncorrected_hz": res.uncorrected,
        "bandwidth_factor": bandwidth_factor(design),
    }


def feed_summary(tree: FeedTree) -> dict:
    lengths = tree.path_electrical_lengths()
    gamma = feed_input_reflection(tree)
    return {
        "n_elements": tree.n_elements,
        "port_ohms": tree.port_impedance,
        "element_ohms": tree.element_impedance,
        "junction_loads_ohms": list(tree.junction_loads),
        # the tree is symmetric: one root-to-leaf path describes every branch
        "segments": [
            {
                "role": s.role,
                "z0_ohms": s.z0,
                "width_mm": _mm(s.width),
                "length_mm": _mm(s.physical_length),
                "electrical_length_deg": math.degrees(s.electrical_length),
                "eps_eff": s.eps_eff_line,
            }
            for s in tree.paths()[0][1]
        ],
        "path_length_spread_rad": max(lengths) - min(lengths),
        "input_gamma_mag": abs(gamma),
        "input_return_loss_db": _finite_or_none(return_loss_db(min(abs(gamma), 1.0))),
    }


def _finite_or_none(x):
    return x if x is not None and math.isfinite(x) else None


def metrics_summary(m: PatternMetrics) -> dict:
    return {
        "directivity": m.directivity,
        "directivity_dbi": m.directivity_dbi,
        "gain": m.gain,
        "gain_db": m.gain_db,
        "hpbw_e_plane_deg": m.hpbw_e_plane,
        "hpbw_h_plane_deg": m.hpbw_h_plane,
        "sidelobe_level_db": m.sidelobe_level,
        "main_lobe_theta_deg": math.degrees(m.main_lobe_direction[0]),
        "main_lobe_phi_deg": math.degrees(m.main_lobe_direction[1]),
    }


def sweep_summary(response: FrequencyResponse) -> dict:
    i = int(np.argmin(np.abs(response.gamma)))
    mag = float(abs(response.gamma[i]))
    try:
        bw = bandwidth_minus_10db(response)
    except MetricUndefined:
        bw = None
    return {
        "points": int(response.frequencies.size),
        "reference_ohms": response.reference_impedance,
        "min_vswr": (1.0 + mag) / (1.0 - mag),
        "min_vswr_frequency_hz": float(response.frequencies[i]),
        "min_s11_db": _finite_or_none(-return_loss_db(mag)),
        "bandwidth_10db_hz": bw,
    }


def layout_summary(layout: ArrayLayout, run: DesignRun) -> dict:
    return {
        "surface": layout.surface.value,
        "n": len(layout),
        "spacing_mm": _mm(layout.spacing),
        "radius_mm": None if layout.cylinder_radius is None else _mm(layout.cylinder_radius),
        "positions_mm": [[_mm(float(c)) for c in p] for p in layout.positions],
        "steer_theta_deg": run.spec.array.steer_theta_deg,
    }


def run_design(spec: DesignSpec) -> dict:
    """Run every stage and collect a JSON-ready report record."""
    run = execute(spec)
    return {
        "spec": spec.to_dict(),
        "patch": patch_summary(run.design),
        "array": layout_summary(run.layout, run),
        "feed": feed_summary(run.feed),
        "pattern": {"frequency_hz": run.pattern.frequency, **metrics_summary(run.metrics)},
        "sweep": sweep_summary(run.response),
    }


def dumps_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"
