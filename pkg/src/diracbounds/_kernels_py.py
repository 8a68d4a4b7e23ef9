"""Pure-Python/numpy implementation of the Bessel kernels.

Used when the compiled ``_kernels`` extension is unavailable. Both modules
expose the same three functions with identical numerical behaviour.
"""
import math

import numpy as np

# Below this argument the ascending series is used; it has no cancellation there.
SERIES_CUTOFF = 2.0
_RESCALE = 1e250


def miller_start(nmax, x):
    """Even starting index for the downward recurrence."""
    m = max(float(nmax), x)
    n = int(m + 20 + 3.0 * m ** (1.0 / 3.0) + math.sqrt(40.0 * m))
    return n + (n & 1)


def _series_scalar(n, x):
    half = 0.5 * x
    term = 1.0
    for j in range(1, n + 1):
        term *= half / j
    total = term
    q = -half * half
    m = 0
    while True:
        m += 1
        term *= q / (m * (m + n))
        total += term
        if abs(term) < 1e-17 * abs(total) or m > 200:
            break
    return total


def bessel_j_scalar(n, x):
    """J_n(x) for integer n >= 0 and real x >= 0."""
    if x == 0.0:
        return 1.0 if n == 0 else 0.0
    if x <= SERIES_CUTOFF:
        return _series_scalar(n, x)
    top = miller_start(n, x)
    two_over_x = 2.0 / x
    jp1 = 0.0
    j = 1e-30
    norm = 0.0
    val = 0.0
    for k in range(top, 0, -1):
        jm1 = k * two_over_x * j - jp1
        jp1 = j
        j = jm1
        if abs(j) > _RESCALE:
            j /= _RESCALE
            jp1 /= _RESCALE
            norm /= _RESCALE
            val /= _RESCALE
        if k - 1 == n:
            val = j
        if (k - 1) % 2 == 0 and k - 1 > 0:
            norm += 2.0 * j
    norm += j
    return val / norm


def bessel_jn_table(nmax, x):
    """J_0..J_nmax at every point of ``x``; shape ``(nmax + 1, len(x))``."""
    x = np.ascontiguousarray(x, dtype=float).ravel()
    out = np.zeros((nmax + 1, x.size))
    if x.size == 0:
        return out

    zero = x == 0.0
    out[0, zero] = 1.0

    small = (x > 0.0) & (x <= SERIES_CUTOFF)
    if small.any():
        xs = x[small]
        half = 0.5 * xs
        q = -half * half
        lead = np.ones_like(xs)
        for n in range(nmax + 1):
            if n > 0:
                lead = lead * half / n
            term = lead.copy()
            total = term.copy()
            for m in range(1, 60):
                term = term * q / (m * (m + n))
                total += term
                if np.all(np.abs(term) <= 1e-17 * np.abs(total)):
                    break
            out[n, small] = total

    big = x > SERIES_CUTOFF
    if big.any():
        xb = x[big]
        top = miller_start(nmax, float(xb.max()))
        two_over_x = 2.0 / xb
        jp1 = np.zeros_like(xb)
        j = np.full_like(xb, 1e-30)
        norm = np.zeros_like(xb)
        vals = np.zeros((nmax + 1, xb.size))
        for k in range(top, 0, -1):
            jm1 = k * two_over_x * j - jp1
            jp1 = j
            j = jm1
            over = np.abs(j) > _RESCALE
            if over.any():
                j[over] /= _RESCALE
                jp1[over] /= _RESCALE
                norm[over] /= _RESCALE
                vals[:, over] /= _RESCALE
            idx = k - 1
            if idx <= nmax:
                vals[idx] = j
            if idx % 2 == 0 and idx > 0:
                norm += 2.0 * j
        norm += j
        out[:, big] = vals / norm
    return out


def bessel_j_array(n, x):
    """J_n evaluated elementwise on ``x``."""
    return bessel_jn_table(n, x)[n]
