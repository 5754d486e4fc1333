# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops; see ``_kernels_py`` for the reference numpy versions."""
import numpy as np

from libc.math cimport cos, sin


def thermal_sums(const double[::1] energies, const double[::1] weights,
                 const double[::1] omegas):
    cdef Py_ssize_t n_lev = energies.shape[0]
    cdef Py_ssize_t n_t = omegas.shape[0]
    cdef Py_ssize_t i, j
    re = np.zeros((3, n_t), dtype=np.float64)
    im = np.zeros((3, n_t), dtype=np.float64)
    cdef double[:, ::1] r = re
    cdef double[:, ::1] q = im
    cdef double om, e, c, s, r0, r1, r2, q0, q1, q2
    with nogil:
        for j in range(n_t):
            om = omegas[j]
            r0 = 0.0; r1 = 0.0; r2 = 0.0
            q0 = 0.0; q1 = 0.0; q2 = 0.0
            for i in range(n_lev):
                e = energies[i]
                c = weights[i] * cos(om * e)
                s = -weights[i] * sin(om * e)
                r0 += c
                q0 += s
                r1 += e * c
                q1 += e * s
                r2 += e * e * c
                q2 += e * e * s
            r[0, j] = r0; r[1, j] = r1; r[2, j] = r2
            q[0, j] = q0; q[1, j] = q1; q[2, j] = q2
    return re + 1j * im


def laguerre_table(int n_max, int alpha_max, z):
    zarr = np.ascontiguousarray(z, dtype=np.complex128)
    cdef double complex[::1] zz = zarr
    cdef Py_ssize_t n_z = zz.shape[0]
    out = np.empty((alpha_max + 1, n_max + 1, n_z), dtype=np.complex128)
    cdef double complex[:, :, ::1] L = out
    cdef Py_ssize_t a, n, j
    cdef double complex x, prev, cur, nxt
    with nogil:
        for a in range(alpha_max + 1):
            for j in range(n_z):
                x = zz[j]
                prev = 1.0
                L[a, 0, j] = prev
                if n_max >= 1:
                    cur = 1.0 + a - x
                    L[a, 1, j] = cur
                    for n in range(1, n_max):
                        nxt = ((2 * n + 1 + a - x) * cur - (n + a) * prev) / (n + 1)
                        L[a, n + 1, j] = nxt
                        prev = cur
                        cur = nxt
    return out
