"""NumPy implementation of the array-field kernel.

Mirrors ``_kernels.pyx`` operation for operation; used when the compiled
extension is unavailable and as the reference in tests and benchmarks.
"""

from __future__ import annotations

import numpy as np

ISOTROPIC = 0
ISOTROPIC_GROUNDED = 1
PATCH = 2


def element_factor(w, a, b, kind, half_k_leff, half_k_w):
    """Scalar co-pol field of one element from local direction cosines.

    ``w`` is along the element normal, ``a`` along the resonant length and
    ``b`` along the width.
    """
    if kind == ISOTROPIC:
        return np.ones_like(w)
    above = w >= 0.0
    if kind == ISOTROPIC_GROUNDED:
        return above.astype(np.float64)
    x = half_k_w * b
    sinc = np.sinc(x / np.pi)
    edge = np.sqrt(np.maximum(0.0, 1.0 - b * b))
    return np.where(above, np.cos(half_k_leff * a) * sinc * edge, 0.0)


def array_field(directions, positions, normals, length_axes, width_axes, weights,
                k, half_k_leff, half_k_w, kind):
    """Coherent far-field sum over elements for each direction.

    Args:
        directions: (M, 3) unit vectors.
        positions, normals, length_axes, width_axes: (N, 3) per-element frame.
        weights: (N,) complex excitations ``A * exp(j*phase)``.
        k: free-space wavenumber.

    Returns:
        (M,) complex field.
    """
    d = np.asarray(directions, dtype=np.float64)
    w = d @ np.asarray(normals, dtype=np.float64).T
    a = d @ np.asarray(length_axes, dtype=np.float64).T
    b = d @ np.asarray(width_axes, dtype=np.float64).T
    elem = element_factor(w, a, b, kind, half_k_leff, half_k_w)
    phase = k * (d @ np.asarray(positions, dtype=np.float64).T)
    terms = np.asarray(weights, dtype=np.complex128) * (np.cos(phase) + 1j * np.sin(phase)) * elem
    # fixed left-to-right element order for reproducibility
    out = np.zeros(d.shape[0], dtype=np.complex128)
    for i in range(terms.shape[1]):
        out += terms[:, i]
    return out
