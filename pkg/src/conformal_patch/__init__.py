"""Rectangular microstrip patch synthesis and conformal 1xN array analysis."""

from .array_geometry import (
    ArrayLayout,
    ElementPlacement,
    Excitation,
    Surface,
    array_factor,
    cophase_excitation,
    cylindrical_layout,
    planar_layout,
    total_pattern,
    uniform_excitation,
)
from .element_pattern import (
    IsotropicElement,
    PatchElement,
    RadiationPattern,
    SphericalGrid,
    isotropic_hemisphere_pattern,
    patch_element_pattern,
)
from .feed_network import (
    FeedTree,
    LineSegment,
    build_corporate_feed,
    feed_input_reflection,
    microstrip_analyze,
    microstrip_synthesize,
    quarter_wave_impedance,
)
from .kernels import BACKEND
from .metrics import (
    FrequencyResponse,
    PatternMetrics,
    bandwidth_minus_10db,
    directivity,
    gain,
    half_power_beamwidth,
    resonator_sweep,
    return_loss_db,
    sidelobe_level,
    vswr_from_reflection,
)
from .synthesis import (
    PatchDesign,
    Substrate,
    bandwidth_factor,
    effective_length,
    effective_permittivity,
    length_extension,
    patch_width,
    resonant_frequency,
    synthesize_patch,
)

__version__ = "0.1.0"
