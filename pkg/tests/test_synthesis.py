import dataclasses
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conformal_patch.constants import SI, PhysicalConstants
from conformal_patch.errors import DomainError
from conformal_patch.synthesis import (
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

from oracles import patch_chain

C = 299792458.0

# 30-digit evaluation of the chain for 9 GHz on eps_r 2.94, h 0.762 mm
W_9GHZ = 11.8662934673e-3
EPS_EFF_9GHZ = 2.69897597822
L_EFF_9GHZ = 10.1379159945e-3
DELTA_L_9GHZ = 0.373083405247e-3
L_9GHZ = 9.39174918397e-3
UNCORRECTED_9GHZ = 9308303952.68
BANDWIDTH_FACTOR_9GHZ = 0.00648712768131


class TestConstants:
    def test_c_consistent_with_eps0_mu0(self):
        assert 1.0 / math.sqrt(SI.eps0 * SI.mu0) == pytest.approx(SI.c, rel=1e-12)

    def test_inconsistent_constants_rejected(self):
        with pytest.raises(ValueError):
            PhysicalConstants(c=3e8, eps0=SI.eps0, mu0=SI.mu0 * 1.01)


class TestSubstrate:
    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(eps_r=0.5, h=1e-3),
            dict(eps_r=2.2, h=0.0),
            dict(eps_r=2.2, h=1e-3, metal_thickness=-1e-6),
            dict(eps_r=2.2, h=1e-3, radiation_efficiency=0.0),
            dict(eps_r=2.2, h=1e-3, radiation_efficiency=1.5),
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(DomainError):
            Substrate(**kwargs)


class TestPatchWidth:
    def test_worked_example(self, rt6002):
        assert patch_width(9e9, rt6002) == pytest.approx(11.87e-3, abs=0.01e-3)
        assert patch_width(9e9, rt6002) == pytest.approx(W_9GHZ, rel=1e-10)

    def test_air_is_half_wavelength(self):
        assert patch_width(9e9, Substrate(1.0, 1e-3)) == pytest.approx(C / 18e9, rel=1e-15)
        assert patch_width(9e9, Substrate(1.0, 1e-3)) == pytest.approx(16.66e-3, abs=0.01e-3)

    def test_halves_when_frequency_doubles(self, rt6002):
        assert patch_width(18e9, rt6002) == pytest.approx(patch_width(9e9, rt6002) / 2, rel=1e-15)

    def test_decreasing_in_eps_r(self):
        widths = [patch_width(9e9, Substrate(er, 1e-3)) for er in (1.0, 2.2, 4.4, 10.2)]
        assert widths == sorted(widths, reverse=True)

    @pytest.mark.parametrize("f0", [0.0, -1e9])
    def test_nonpositive_frequency(self, rt6002, f0):
        with pytest.raises(DomainError):
            patch_width(f0, rt6002)


class TestEffectivePermittivity:
    def test_worked_example(self, rt6002):
        assert effective_permittivity(rt6002, 11.87e-3) == pytest.approx(2.699, abs=0.002)
        assert effective_permittivity(rt6002, W_9GHZ) == pytest.approx(EPS_EFF_9GHZ, rel=1e-10)

    def test_air(self):
        assert effective_permittivity(Substrate(1.0, 0.762e-3), 5e-3) == 1.0

    def test_thin_substrate_limit(self):
        assert effective_permittivity(Substrate(4.4, 1e-12), 10e-3) == pytest.approx(4.4, rel=1e-5)

    def test_rejects_nonpositive_width(self, rt6002):
        with pytest.raises(DomainError):
            effective_permittivity(rt6002, 0.0)


class TestEffectiveLength:
    def test_worked_example(self):
        assert effective_length(9e9, 2.699) == pytest.approx(10.14e-3, abs=0.01e-3)

    def test_air(self):
        assert effective_length(9e9, 1.0) == pytest.approx(C / 18e9, rel=1e-15)

    def test_quadrupled_permittivity_halves_length(self):
        assert effective_length(9e9, 4.0) == pytest.approx(effective_length(9e9, 1.0) / 2, rel=1e-15)

    @pytest.mark.parametrize("args", [(0.0, 2.0), (9e9, 0.9)])
    def test_invalid(self, args):
        with pytest.raises(DomainError):
            effective_length(*args)


class TestLengthExtension:
    def test_worked_example(self, rt6002):
        assert length_extension(rt6002, 11.87e-3, 2.699) == pytest.approx(0.373e-3, abs=0.002e-3)

    def test_scales_with_height(self):
        a = length_extension(Substrate(2.94, 1e-3), 10e-3, 2.5)
        b = length_extension(Substrate(2.94, 2e-3), 20e-3, 2.5)
        assert b == pytest.approx(2 * a, rel=1e-14)

    def test_vanishes_with_height(self):
        assert length_extension(Substrate(2.94, 1e-9), 1e-8, 2.5) < 1e-8

    def test_pole(self, rt6002):
        with pytest.raises(DomainError):
            length_extension(rt6002, 10e-3, 0.258)


class TestSynthesizePatch:
    def test_worked_example_against_oracle(self, rt6002):
        d = synthesize_patch(9e9, rt6002)
        expected = patch_chain(9e9, 2.94, 0.762e-3)
        got = (d.W, d.eps_eff, d.L_eff, d.delta_L, d.L)
        assert got == pytest.approx(expected, rel=1e-12)
        assert got == pytest.approx(
            (W_9GHZ, EPS_EFF_9GHZ, L_EFF_9GHZ, DELTA_L_9GHZ, L_9GHZ), rel=1e-10
        )

    def test_air_substrate(self):
        d = synthesize_patch(9e9, Substrate(1.0, 0.762e-3))
        assert d.eps_eff == 1.0
        assert d.L == pytest.approx(d.L_eff - 2 * d.delta_L, rel=1e-15)

    @pytest.mark.parametrize("f0", [1e9, 9e9, 30e9])
    def test_round_trip(self, rt6002, f0):
        d = synthesize_patch(f0, rt6002)
        assert resonant_frequency(d).canonical == pytest.approx(f0, rel=1e-12)

    def test_substrate_too_thick(self):
        with pytest.raises(DomainError):
            synthesize_patch(100e9, Substrate(10.0, 10e-3))

    def test_design_invariants_enforced(self, design_9ghz):
        with pytest.raises(DomainError):
            dataclasses.replace(design_9ghz, L=design_9ghz.L * 1.1)
        with pytest.raises(DomainError):
            dataclasses.replace(design_9ghz, eps_eff=3.5)


class TestResonance:
    def test_uncorrected_model(self, design_9ghz):
        r = resonant_frequency(design_9ghz)
        assert r.uncorrected == pytest.approx(9.31e9, abs=0.005e9)
        assert r.uncorrected == pytest.approx(UNCORRECTED_9GHZ, rel=1e-9)
        assert float(r) == r.canonical

    def test_models_coincide_in_air_without_fringing(self):
        s = Substrate(1.0, 1e-3)
        d = PatchDesign(f0=9e9, substrate=s, W=16e-3, eps_eff=1.0, L_eff=15e-3, delta_L=0.0, L=15e-3)
        r = resonant_frequency(d)
        assert r.canonical == pytest.approx(r.uncorrected, rel=1e-15)


class TestBandwidthFactor:
    def test_zero_in_air(self):
        assert bandwidth_factor(synthesize_patch(9e9, Substrate(1.0, 1e-3))) == 0.0

    def test_linear_in_height(self, design_9ghz):
        thick = dataclasses.replace(
            design_9ghz, substrate=dataclasses.replace(design_9ghz.substrate, h=2 * design_9ghz.substrate.h)
        )
        assert bandwidth_factor(thick) == pytest.approx(2 * bandwidth_factor(design_9ghz), rel=1e-15)

    def test_regression_anchor(self, design_9ghz):
        assert bandwidth_factor(design_9ghz) == pytest.approx(BANDWIDTH_FACTOR_9GHZ, rel=1e-9)


substrates = st.builds(
    Substrate,
    eps_r=st.floats(1.0, 12.0),
    h=st.floats(0.1e-3, 3e-3),
)


@settings(max_examples=300, deadline=None)
@given(f0=st.floats(1e9, 30e9), substrate=substrates)
def test_round_trip_property(f0, substrate):
    try:
        d = synthesize_patch(f0, substrate)
    except DomainError:
        return  # fringing swallows the patch on very thick boards
    assert resonant_frequency(d).canonical == pytest.approx(f0, rel=1e-4)
    assert 1.0 <= d.eps_eff <= substrate.eps_r
    if substrate.eps_r > 1.0:
        assert d.delta_L > 0 and d.L < d.L_eff


@settings(max_examples=200, deadline=None)
@given(
    eps_r=st.floats(1.0, 12.0),
    h=st.floats(1e-4, 1e-2),
    ratios=st.lists(st.floats(1e-4, 1.0), min_size=2, max_size=2, unique=True),
)
def test_eps_eff_monotone_and_bounded(eps_r, h, ratios):
    s = Substrate(eps_r, h)
    lo, hi = sorted(ratios)  # h/W ratios; larger h/W means narrower strip
    e_narrow = effective_permittivity(s, h / hi)
    e_wide = effective_permittivity(s, h / lo)
    assert 1.0 <= e_narrow <= e_wide <= eps_r


@settings(max_examples=200, deadline=None)
@given(f0=st.floats(1e8, 1e11), eps_r=st.floats(1.0, 12.0))
def test_width_halves_when_frequency_doubles(f0, eps_r):
    s = Substrate(eps_r, 1e-3)
    assert patch_width(2 * f0, s) == pytest.approx(patch_width(f0, s) / 2, rel=1e-15)


@settings(max_examples=200, deadline=None)
@given(design_f=st.floats(2e9, 20e9), eps_r=st.floats(1.01, 12.0), h1=st.floats(0.1e-3, 3e-3))
def test_bandwidth_factor_increasing_in_height(design_f, eps_r, h1):
    d = synthesize_patch(design_f, Substrate(eps_r, 1e-3))
    base = bandwidth_factor(dataclasses.replace(d, substrate=Substrate(eps_r, h1)))
    taller = bandwidth_factor(dataclasses.replace(d, substrate=Substrate(eps_r, h1 * 1.5)))
    assert taller > base > 0
