# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled array-field kernel; same contract as ``_kernels_py``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport cos, sin, sqrt

cnp.import_array()

cdef enum:
    ISOTROPIC = 0
    ISOTROPIC_GROUNDED = 1


cdef inline double _element(double w, double a, double b, int kind,
                            double half_k_leff, double half_k_w) nogil:
    cdef double x, sinc, edge
    if kind == ISOTROPIC:
        return 1.0
    if w < 0.0:
        return 0.0
    if kind == ISOTROPIC_GROUNDED:
        return 1.0
    x = half_k_w * b
    if x == 0.0:
        sinc = 1.0
    else:
        sinc = sin(x) / x
    edge = 1.0 - b * b
    edge = sqrt(edge) if edge > 0.0 else 0.0
    return cos(half_k_leff * a) * sinc * edge


def array_field(directions, positions, normals, length_axes, width_axes, weights,
                double k, double half_k_leff, double half_k_w, int kind):
    cdef const double[:, ::1] d = np.ascontiguousarray(directions, dtype=np.float64)
    cdef const double[:, ::1] p = np.ascontiguousarray(positions, dtype=np.float64)
    cdef const double[:, ::1] n = np.ascontiguousarray(normals, dtype=np.float64)
    cdef const double[:, ::1] la = np.ascontiguousarray(length_axes, dtype=np.float64)
    cdef const double[:, ::1] wa = np.ascontiguousarray(width_axes, dtype=np.float64)
    wts = np.ascontiguousarray(weights, dtype=np.complex128)
    cdef const double[::1] wre = np.ascontiguousarray(wts.real)
    cdef const double[::1] wim = np.ascontiguousarray(wts.imag)
    cdef Py_ssize_t m_count = d.shape[0]
    cdef Py_ssize_t n_count = p.shape[0]
    out = np.zeros(m_count, dtype=np.complex128)
    cdef double[::1] ore = np.zeros(m_count, dtype=np.float64)
    cdef double[::1] oim = np.zeros(m_count, dtype=np.float64)
    cdef Py_ssize_t m, i
    cdef double dx, dy, dz, e, ph, c, s, re, im
    with nogil:
        for m in range(m_count):
            dx = d[m, 0]
            dy = d[m, 1]
            dz = d[m, 2]
            re = 0.0
            im = 0.0
            for i in range(n_count):
                e = _element(dx * n[i, 0] + dy * n[i, 1] + dz * n[i, 2],
                             dx * la[i, 0] + dy * la[i, 1] + dz * la[i, 2],
                             dx * wa[i, 0] + dy * wa[i, 1] + dz * wa[i, 2],
                             kind, half_k_leff, half_k_w)
                ph = k * (dx * p[i, 0] + dy * p[i, 1] + dz * p[i, 2])
                c = cos(ph) * e
                s = sin(ph) * e
                re = re + wre[i] * c - wim[i] * s
                im = im + wre[i] * s + wim[i] * c
            ore[m] = re
            oim[m] = im
    out.real = np.asarray(ore)
    out.imag = np.asarray(oim)
    return out
