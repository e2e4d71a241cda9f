"""Compare the compiled array-field kernel with the NumPy fallback.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import timeit

import numpy as np

from conformal_patch import kernels
from conformal_patch.array_geometry import cylindrical_layout, half_wavelength, planar_layout
from conformal_patch.constants import wavenumber
from conformal_patch.element_pattern import SphericalGrid

F = 9.25e9


def _case(layout, step):
    grid = SphericalGrid.uniform(step)
    d = np.ascontiguousarray(grid.directions().reshape(-1, 3))
    w = np.ones(len(layout), dtype=np.complex128)
    k = wavenumber(F)
    return (
        d,
        layout.positions,
        layout.normals,
        layout.length_axes,
        layout.width_axes,
        w,
        k,
        0.5 * k * 10.14e-3,
        0.5 * k * 11.87e-3,
        kernels.PATCH,
    )


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    s = half_wavelength(F)
    cases = {
        "planar 1x4, 1 deg": _case(planar_layout(4, s), 1.0),
        "cylinder 1x4, 1 deg": _case(cylindrical_layout(4, s, 50e-3), 1.0),
        "cylinder 1x16, 0.5 deg": _case(cylindrical_layout(16, s, 100e-3), 0.5),
    }
    print(f"active backend: {kernels.BACKEND}")
    if kernels.array_field_compiled is None:
        print("compiled kernel not built; only the NumPy fallback is timed")
    print(f"{'case':<26}{'directions':>11}{'numpy ms':>11}{'compiled ms':>13}{'speedup':>9}")
    for name, case in cases.items():
        py = min(timeit.repeat(lambda: kernels.array_field_py(*case), number=1, repeat=args.repeat))
        line = f"{name:<26}{case[0].shape[0]:>11}{py * 1e3:>11.2f}"
        if kernels.array_field_compiled is not None:
            cy = min(timeit.repeat(lambda: kernels.array_field_compiled(*case), number=1, repeat=args.repeat))
            diff = np.max(np.abs(kernels.array_field_compiled(*case) - kernels.array_field_py(*case)))
            line += f"{cy * 1e3:>13.2f}{py / cy:>8.1f}x  (max diff {diff:.1e})"
        print(line)


if __name__ == "__main__":
    main()
