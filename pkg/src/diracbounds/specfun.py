"""Integer-order Bessel functions of the first kind and disk secular roots.

Evaluation delegates to the kernel selected in :mod:`diracbounds._backend`:
the ascending series for ``x <= 2`` and Miller's normalised downward
recurrence above that. Both are accurate to a few ulps of 1 on [0, 200].

Secular equation
----------------
On the angular fiber ``k`` the radial Dirac operator acts on
``(u_+, u_-)`` as::

    mu u_+ = -i u_-' - i (k+1)/r u_-
    mu u_- = -i u_+' + i k/r u_+

The regular solution is ``u_+ = J_k(mu r)``, ``u_- = i J_{k+1}(mu r)``:
the second line reduces to ``J_k'(x) - (k/x) J_k(x) = -J_{k+1}(x)`` and the
first to ``J_{k+1}'(x) + ((k+1)/x) J_{k+1}(x) = J_k(x)``. The boundary
coupling ``u_-(1) = i u_+(1)`` then gives ``J_k(mu) = J_{k+1}(mu)``.
With signed order and argument (``J_{-n} = (-1)^n J_n`` and
``J_n(-x) = (-1)^n J_n(x)``) the same equation describes every fiber and
both signs of ``mu``; for ``k >= 0`` a negative eigenvalue ``-nu`` solves
``J_k(nu) = -J_{k+1}(nu)``, which is what ``sign=-1`` selects below.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._backend import bessel_j_scalar, bessel_jn_table

MAX_ORDER = 50
SCAN_STEP = 0.05
SCAN_CEILING = 200.0
ROOT_TOL = 1e-13
PHI_SWITCH = 1e-8

__all__ = [
    "SecularRoot",
    "bessel_j",
    "bessel_j_prime",
    "bessel_j_signed",
    "bessel_table",
    "secular_function",
    "secular_root",
    "secular_roots",
    "bessel_zero",
    "phi",
]


class RootNotBracketed(RuntimeError):
    """No sign change was found below the scan ceiling."""


@dataclass(frozen=True)
class SecularRoot:
    k: int
    m: int
    mu: float
    sign: int = 1

    @property
    def residual(self) -> float:
        return abs(secular_function(self.k, self.mu, self.sign))


def _check_order(k: int, kmax: int = MAX_ORDER + 1) -> int:
    if int(k) != k or k < 0 or k > kmax:
        raise ValueError(f"order must be an integer in [0, {kmax}], got {k!r}")
    return int(k)


def _check_arg(x: float) -> float:
    x = float(x)
    if not math.isfinite(x) or x < 0.0:
        raise ValueError(f"argument must be finite and non-negative, got {x!r}")
    return x


def bessel_j(k: int, x: float) -> float:
    """J_k(x) for 0 <= k <= 50 and finite x >= 0."""
    return bessel_j_scalar(_check_order(k, MAX_ORDER), _check_arg(x))


def bessel_j_prime(k: int, x: float) -> float:
    """Derivative J_k'(x) from the standard recurrences."""
    k = _check_order(k, MAX_ORDER)
    x = _check_arg(x)
    if k == 0:
        return -bessel_j_scalar(1, x)
    return 0.5 * (bessel_j_scalar(k - 1, x) - bessel_j_scalar(k + 1, x))


def bessel_j_signed(k: int, x: float) -> float:
    """J_k(x) for any integer order and real argument."""
    sign = 1.0
    if k < 0:
        k = -k
        sign = -1.0 if k % 2 else 1.0
    if x < 0:
        x = -x
        if k % 2:
            sign = -sign
    return sign * bessel_j_scalar(_check_order(k), x)


def bessel_table(nmax: int, x) -> np.ndarray:
    """Array of shape ``(nmax + 1, len(x))`` holding J_0..J_nmax."""
    x = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(x)) or np.any(x < 0):
        raise ValueError("arguments must be finite and non-negative")
    return bessel_jn_table(_check_order(nmax), x)


def secular_function(k: int, mu: float, sign: int = 1) -> float:
    """J_k(mu) - sign * J_{k+1}(mu)."""
    return bessel_j_scalar(k, mu) - sign * bessel_j_scalar(k + 1, mu)


def _brackets(k: int, count: int, sign: int, step: float, ceiling: float):
    # the first node sits at ``step``; every secular root exceeds it
    found = []
    chunk = 64
    prev_x = step
    prev_val = secular_function(k, step, sign)
    while prev_x < ceiling and len(found) < count:
        grid = prev_x + step * np.arange(1, chunk + 1)
        grid = grid[grid <= ceiling + 1e-12]
        if grid.size == 0:
            break
        tab = bessel_jn_table(k + 1, grid)
        vals = tab[k] - sign * tab[k + 1]
        for x, val in zip(grid, vals):
            if (val > 0) != (prev_val > 0) or val == 0.0:
                found.append((prev_x, x))
                if len(found) == count:
                    break
            prev_x, prev_val = x, val
    if len(found) < count:
        raise RootNotBracketed(
            f"only {len(found)} sign changes of J_{k} - ({sign})J_{k+1} below {ceiling}"
        )
    return found


def _bisect(k: int, a: float, b: float, sign: int) -> float:
    fa = secular_function(k, a, sign)
    fb = secular_function(k, b, sign)
    if fb == 0.0:
        return b
    while b - a > ROOT_TOL:
        c = 0.5 * (a + b)
        if c <= a or c >= b:
            break
        fc = secular_function(k, c, sign)
        if fc == 0.0:
            return c
        if (fc > 0) == (fa > 0):
            a, fa = c, fc
        else:
            b, fb = c, fc
    return a if abs(fa) < abs(fb) else b


def secular_roots(
    k: int,
    count: int,
    sign: int = 1,
    step: float = SCAN_STEP,
    ceiling: float = SCAN_CEILING,
) -> list[SecularRoot]:
    """First ``count`` positive roots of J_k(mu) = sign * J_{k+1}(mu)."""
    k = _check_order(k, MAX_ORDER)
    if count < 1:
        raise ValueError("count must be positive")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    roots = []
    for m, (a, b) in enumerate(_brackets(k, count, sign, step, ceiling), start=1):
        roots.append(SecularRoot(k=k, m=m, mu=float(_bisect(k, float(a), float(b), sign)), sign=sign))
    return roots


def secular_root(k: int, m: int, sign: int = 1) -> SecularRoot:
    """m-th positive root of J_k(mu) - J_{k+1}(mu) (or of the sum for ``sign=-1``)."""
    if int(m) != m or m < 1:
        raise ValueError(f"branch index must be a positive integer, got {m!r}")
    return secular_roots(k, int(m), sign)[-1]


def bessel_zero(k: int, m: int) -> float:
    """m-th positive zero of J_k, by scan and bisection."""
    k = _check_order(k, MAX_ORDER)
    step = SCAN_STEP
    x = step
    prev = bessel_j_scalar(k, x)
    seen = 0
    while x < SCAN_CEILING:
        nxt = x + step
        cur = bessel_j_scalar(k, nxt)
        if (prev > 0) != (cur > 0):
            seen += 1
            if seen == m:
                a, b, fa = x, nxt, prev
                while b - a > ROOT_TOL:
                    c = 0.5 * (a + b)
                    if c <= a or c >= b:
                        break
                    fc = bessel_j_scalar(k, c)
                    if (fc > 0) == (fa > 0):
                        a, fa = c, fc
                    else:
                        b = c
                return 0.5 * (a + b)
        x, prev = nxt, cur
    raise RootNotBracketed(f"J_{k} has fewer than {m} zeros below {SCAN_CEILING}")


def phi(a: float, b: float) -> float:
    """(ln a - ln b) / (a - b), continuously extended by 1/a on the diagonal."""
    a = float(a)
    b = float(b)
    if not (a > 0 and b > 0):
        raise ValueError(f"phi needs positive arguments, got ({a}, {b})")
    if abs(a - b) < PHI_SWITCH * max(a, b):
        # expansion about the midpoint; exactly symmetric in (a, b)
        m = 0.5 * (a + b)
        d = b - a
        return 1.0 / m + d * d / (12.0 * m ** 3)
    # ordered so the result is symmetric; log1p avoids cancellation near a = b
    hi, lo = max(a, b), min(a, b)
    return math.log1p((hi - lo) / lo) / (hi - lo)
