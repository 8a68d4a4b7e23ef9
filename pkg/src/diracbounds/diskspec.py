"""Spectrum and eigenspinors of the infinite-mass Dirac operator on a disk.

Fiber ``k`` carries spinors ``(u_+(r) e^{ik theta}, u_-(r) e^{i(k+1) theta})``
with ``u_+ = J_k(mu r)`` and ``u_- = i J_{k+1}(mu r)`` (signed order and
argument). Its eigenvalues are the real solutions of ``J_k(mu) = J_{k+1}(mu)``,
positive ones from ``J_k = J_{k+1}`` and negative ones ``-nu`` from
``J_k(nu) = -J_{k+1}(nu)``. Fiber ``-(k+1)`` carries the negatives of the
eigenvalues of fiber ``k``, so only ``k >= 0`` is solved.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .quadrature import DEFAULT_RADIAL_ORDER, gauss_legendre_01, mu_disk, radial_profile
from .specfun import MAX_ORDER, bessel_j_signed, secular_roots

MAX_PER_FIBER = 20


@dataclass(frozen=True)
class DiskEigenpair:
    k: int
    mu: float
    radius: float = 1.0
    branch: int = 1
    norm: float = 1.0

    @property
    def unit_mu(self) -> float:
        """Eigenvalue of the same mode on the unit disk."""
        return self.mu * self.radius

    @property
    def secular_residual(self) -> float:
        x = self.unit_mu
        return abs(bessel_j_signed(self.k, x) - bessel_j_signed(self.k + 1, x))

    def __call__(self, r, theta):
        return disk_eigenfunction(self, r, theta)


def _normalisation(k: int, unit_mu: float, radius: float) -> float:
    # enough nodes to resolve J^2 oscillations at large arguments
    order = DEFAULT_RADIAL_ORDER + 2 * int(math.ceil(abs(unit_mu)))
    s, w = gauss_legendre_01(order)
    a = np.array([bessel_j_signed(k, unit_mu * x) for x in s])
    b = np.array([bessel_j_signed(k + 1, unit_mu * x) for x in s])
    mass = 2.0 * math.pi * radius**2 * np.sum(w * (a * a + b * b) * s)
    return 1.0 / math.sqrt(mass)


def _pair(k: int, unit_mu: float, radius: float, branch: int) -> DiskEigenpair:
    return DiskEigenpair(k=k, mu=unit_mu / radius, radius=radius, branch=branch,
                         norm=_normalisation(k, unit_mu, radius))


def fiber_spectrum(k: int, per_fiber: int, radius: float = 1.0) -> list[DiskEigenpair]:
    """Lowest ``per_fiber`` positive and negative eigenvalues on fiber ``k >= 0``."""
    out = []
    for root in secular_roots(k, per_fiber, sign=1):
        out.append(_pair(k, root.mu, radius, 1))
    for root in secular_roots(k, per_fiber, sign=-1):
        out.append(_pair(k, -root.mu, radius, -1))
    return out


def mirror(pair: DiskEigenpair) -> DiskEigenpair:
    """Image of an eigenpair on fiber ``-(k+1)`` with eigenvalue ``-mu``."""
    return DiskEigenpair(k=-(pair.k + 1), mu=-pair.mu, radius=pair.radius,
                         branch=-pair.branch, norm=pair.norm)


def disk_spectrum(radius: float = 1.0, k_max: int = 10, per_fiber: int = 5) -> list[DiskEigenpair]:
    """Eigenpairs on fibers -(k_max+1)..k_max sorted by eigenvalue.

    Fibers ``0..k_max`` contribute ``per_fiber`` eigenvalues of each sign;
    their mirrors fill fibers ``-1..-(k_max+1)``.
    """
    if not (radius > 0 and math.isfinite(radius)):
        raise ValueError(f"radius must be positive, got {radius!r}")
    if int(k_max) != k_max or not 0 <= k_max <= MAX_ORDER:
        raise ValueError(f"k_max must be an integer in [0, {MAX_ORDER}]")
    if int(per_fiber) != per_fiber or not 1 <= per_fiber <= MAX_PER_FIBER:
        raise ValueError(f"per_fiber must be an integer in [1, {MAX_PER_FIBER}]")
    pairs = []
    for k in range(int(k_max) + 1):
        fiber = fiber_spectrum(k, int(per_fiber), float(radius))
        pairs.extend(fiber)
        pairs.extend(mirror(p) for p in fiber)
    pairs.sort(key=lambda p: (p.mu, p.k))
    return pairs


def principal(pairs: list[DiskEigenpair]) -> DiskEigenpair:
    return min((p for p in pairs if p.mu > 0), key=lambda p: p.mu)


def disk_eigenfunction(pair: DiskEigenpair, r, theta):
    """Spinor components ``(u1, u2)`` of the normalised eigenfunction.

    ``u1 = c J_k(mu r) e^{ik theta}``, ``u2 = c i e^{i(k+1) theta} J_{k+1}(mu r)``.
    Scalars give a complex pair; arrays give an array of shape ``(2, ...)``.
    """
    r_arr = np.asarray(r, dtype=float)
    th = np.asarray(theta, dtype=float)
    if np.any(r_arr < 0) or np.any(r_arr > pair.radius * (1 + 1e-14)):
        raise ValueError(f"evaluation radius outside [0, {pair.radius}]")
    x = pair.mu * r_arr
    flat = np.ravel(x)
    jk = np.array([bessel_j_signed(pair.k, v) for v in flat]).reshape(x.shape)
    jk1 = np.array([bessel_j_signed(pair.k + 1, v) for v in flat]).reshape(x.shape)
    u1 = pair.norm * jk * np.exp(1j * pair.k * th)
    u2 = pair.norm * 1j * np.exp(1j * (pair.k + 1) * th) * jk1
    if np.ndim(u1) == 0:
        return complex(u1), complex(u2)
    return np.stack(np.broadcast_arrays(u1, u2))


def rayleigh_quotient_disk(order: int = DEFAULT_RADIAL_ORDER) -> float:
    """Rayleigh quotient of the k = 0 eigenspinor on the unit disk."""
    mu = mu_disk()
    r, w, j0, j1, j2 = radial_profile(order, mu)
    dj0 = -j1
    dj1 = 0.5 * (j0 - j2)
    num = mu**2 * np.sum(w * (dj0**2 + dj1**2) * r)
    num += np.sum(w * j1**2 / r)
    num += bessel_j_signed(0, mu) ** 2
    den = np.sum(w * (j0**2 + j1**2) * r)
    return float(num / den)


def rayleigh_check_disk() -> float:
    """Should return the squared principal eigenvalue of the unit disk."""
    return rayleigh_quotient_disk(DEFAULT_RADIAL_ORDER)
