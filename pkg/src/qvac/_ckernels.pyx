# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled trigonometric panel sums for the oscillatory quadrature.

For a panel with midpoint m and half-width h the node phases are split as
``w (m + h x_j)``, so the factors ``cos(w h x_j)``, ``sin(w h x_j)`` are shared
by every panel of the same width and only ``cos(w m)``, ``sin(w m)`` are
evaluated per panel. Along a run of equal-width panels the midpoint phase
advances by ``2 w h``; it is rotated forward and re-anchored with a direct
evaluation every ``ANCHOR`` panels, which bounds the accumulated phase error
to a few ulp. Panel contributions are reduced pairwise, one output entry at a
time.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport cos, sin
from libc.stdlib cimport free, malloc

cnp.import_array()

cdef enum:
    BLOCK = 128
    ANCHOR = 16


cdef double _pairwise(const double* v, Py_ssize_t lo, Py_ssize_t hi) noexcept nogil:
    cdef Py_ssize_t k, mid
    cdef double s = 0.0
    if hi - lo <= BLOCK:
        for k in range(lo, hi):
            s += v[k]
        return s
    mid = lo + ((hi - lo) // 2 // BLOCK) * BLOCK
    if mid == lo:
        mid = lo + BLOCK
    return _pairwise(v, lo, mid) + _pairwise(v, mid, hi)


def panel_trig_sum(omegas, mids, halves, x, a, bint use_sin=False):
    """Return ``sum_{p,j} a[p,j] * trig(omegas[i] * (mids[p] + halves[p] * x[j]))``.

    ``trig`` is cos, or sin when ``use_sin`` is set.
    """
    cdef const double[::1] w = np.ascontiguousarray(omegas, dtype=np.float64)
    cdef const double[::1] m = np.ascontiguousarray(mids, dtype=np.float64)
    cdef const double[::1] h = np.ascontiguousarray(halves, dtype=np.float64)
    cdef const double[::1] xs = np.ascontiguousarray(x, dtype=np.float64)
    cdef const double[:, ::1] av = np.ascontiguousarray(a, dtype=np.float64)
    cdef Py_ssize_t nw = w.shape[0], npan = m.shape[0], nx = xs.shape[0]
    cdef Py_ssize_t i, p, j
    cdef double last_h, c_sum, s_sum, cm, sm, wi, cd, sd, tc
    cdef Py_ssize_t run
    out = np.zeros(nw, dtype=np.float64)
    cdef double[::1] o = out
    if npan == 0 or nw == 0:
        return out
    if av.shape[0] != npan or av.shape[1] != nx or h.shape[0] != npan:
        raise ValueError("shape mismatch between panels, nodes and values")
    cdef double* cx = <double*> malloc(nx * sizeof(double))
    cdef double* sx = <double*> malloc(nx * sizeof(double))
    cdef double* tmp = <double*> malloc(npan * sizeof(double))
    if cx == NULL or sx == NULL or tmp == NULL:
        free(cx); free(sx); free(tmp)
        raise MemoryError()
    try:
        with nogil:
            for i in range(nw):
                wi = w[i]
                last_h = -1.0
                run = 0
                for p in range(npan):
                    if h[p] != last_h:
                        last_h = h[p]
                        for j in range(nx):
                            cx[j] = cos(wi * last_h * xs[j])
                            sx[j] = sin(wi * last_h * xs[j])
                        cd = cos(2.0 * wi * last_h)
                        sd = sin(2.0 * wi * last_h)
                        run = 0
                    if run % ANCHOR == 0:
                        cm = cos(wi * m[p])
                        sm = sin(wi * m[p])
                    else:
                        tc = cm * cd - sm * sd
                        sm = sm * cd + cm * sd
                        cm = tc
                    run += 1
                    c_sum = 0.0
                    s_sum = 0.0
                    for j in range(nx):
                        c_sum += av[p, j] * cx[j]
                        s_sum += av[p, j] * sx[j]
                    if use_sin:
                        tmp[p] = sm * c_sum + cm * s_sum
                    else:
                        tmp[p] = cm * c_sum - sm * s_sum
                o[i] = _pairwise(tmp, 0, npan)
    finally:
        free(cx)
        free(sx)
        free(tmp)
    return out
