# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Bessel kernels; mirrors ``_kernels_py`` line for line."""
import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, sqrt, cbrt

cnp.import_array()

cdef double SERIES_CUTOFF = 2.0
cdef double _RESCALE = 1e250


cdef int _start(int nmax, double x) noexcept nogil:
    cdef double m = nmax if nmax > x else x
    cdef int n = <int>(m + 20 + 3.0 * cbrt(m) + sqrt(40.0 * m))
    return n + (n & 1)


def miller_start(int nmax, double x):
    """Even starting index for the downward recurrence."""
    return _start(nmax, x)


cdef double _series(int n, double x) noexcept nogil:
    cdef double half = 0.5 * x
    cdef double lead = 1.0
    cdef int j
    for j in range(1, n + 1):
        lead *= half / j
    return _series_from(n, x, lead)


cdef double _series_from(int n, double x, double lead) noexcept nogil:
    # ascending series given lead = (x/2)^n / n!
    cdef double half = 0.5 * x
    cdef double term = lead
    cdef double total, q
    cdef int m
    total = term
    q = -half * half
    m = 0
    while True:
        m += 1
        term *= q / (m * (m + n))
        total += term
        if fabs(term) < 1e-17 * fabs(total) or m > 200:
            break
    return total


cdef void _miller(int nmax, double x, int top, double *vals) noexcept nogil:
    # fills vals[0..nmax] with J_0(x)..J_nmax(x); requires x > SERIES_CUTOFF
    cdef double two_over_x = 2.0 / x
    cdef double jp1 = 0.0
    cdef double j = 1e-30
    cdef double jm1
    cdef double norm = 0.0
    cdef int k, idx, i
    for k in range(top, 0, -1):
        jm1 = k * two_over_x * j - jp1
        jp1 = j
        j = jm1
        if fabs(j) > _RESCALE:
            j /= _RESCALE
            jp1 /= _RESCALE
            norm /= _RESCALE
            for i in range(nmax + 1):
                vals[i] /= _RESCALE
        idx = k - 1
        if idx <= nmax:
            vals[idx] = j
        if idx % 2 == 0 and idx > 0:
            norm += 2.0 * j
    norm += j
    for i in range(nmax + 1):
        vals[i] /= norm


def bessel_j_scalar(int n, double x):
    """J_n(x) for integer n >= 0 and real x >= 0."""
    cdef double[::1] buf
    if x == 0.0:
        return 1.0 if n == 0 else 0.0
    if x <= SERIES_CUTOFF:
        return _series(n, x)
    buf = np.zeros(n + 1)
    _miller(n, x, _start(n, x), &buf[0])
    return buf[n]


def bessel_jn_table(int nmax, x):
    """J_0..J_nmax at every point of ``x``; shape ``(nmax + 1, len(x))``."""
    cdef double[::1] xv = np.ascontiguousarray(x, dtype=np.float64).ravel()
    cdef Py_ssize_t npts = xv.shape[0]
    out_arr = np.zeros((nmax + 1, npts))
    cdef double[:, ::1] out = out_arr
    cdef double[::1] buf = np.zeros(nmax + 1)
    cdef Py_ssize_t p
    cdef int n, top
    cdef double xp, lead
    with nogil:
        for p in range(npts):
            xp = xv[p]
            if xp == 0.0:
                out[0, p] = 1.0
            elif xp <= SERIES_CUTOFF:
                lead = 1.0
                for n in range(nmax + 1):
                    if n > 0:
                        lead = lead * (0.5 * xp) / n
                    out[n, p] = _series_from(n, xp, lead)
            else:
                top = _start(nmax, xp)
                _miller(nmax, xp, top, &buf[0])
                for n in range(nmax + 1):
                    out[n, p] = buf[n]
    return out_arr


def bessel_j_array(int n, x):
    """J_n evaluated elementwise on ``x``."""
    return bessel_jn_table(n, x)[n]
