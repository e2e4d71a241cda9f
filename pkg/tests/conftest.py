import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conformal_patch import SphericalGrid, Substrate, synthesize_patch  # noqa: E402


@pytest.fixture
def rt6002():
    # worked-example stackup: eps_r 2.94, 0.762 mm
    return Substrate(eps_r=2.94, h=0.762e-3)


@pytest.fixture
def design_9ghz(rt6002):
    return synthesize_patch(9e9, rt6002)


@pytest.fixture(scope="session")
def grid_1deg():
    return SphericalGrid.uniform(1.0)


@pytest.fixture(scope="session")
def sphere_1deg():
    return SphericalGrid.uniform(1.0, full_sphere=True)


SPEC_DIR = Path(__file__).resolve().parent.parent / "specs"


@pytest.fixture
def worked_spec_path():
    return SPEC_DIR / "x_band_1x4.json"


@pytest.fixture
def bent_spec_path():
    return SPEC_DIR / "x_band_1x4_bent.json"


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
