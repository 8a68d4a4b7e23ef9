"""Conformal maps of the unit disk onto star-shaped domains.

The boundary correspondence ``theta -> phi(theta)`` of ``f: D -> Omega``
with ``f(0) = 0`` and ``f'(0) > 0`` solves Theodorsen's equation

    phi(theta) = theta + K[log rho(phi)](theta),

where ``K`` is conjugation on the circle, applied spectrally. The iteration
is a contraction when ``rho_star < 1``; otherwise it is under-relaxed.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from . import geometry
from .geometry import DomainSpec, TWO_PI

log = logging.getLogger(__name__)

MAX_ITER = 500
ITER_TOL = 1e-12
STALL_LEVEL = 1e-10
ANALYTICITY_TOL = 1e-8
MAX_MODES = 2**17


class ConformalMapError(RuntimeError):
    pass


@dataclass(frozen=True)
class ConformalMap:
    spec: DomainSpec
    n_modes: int
    theta: np.ndarray
    correspondence: np.ndarray
    coefficients: np.ndarray
    iteration_residual: float
    analyticity_residual: float
    iterations: int
    relaxation: float

    @property
    def accepted(self) -> bool:
        return self.iteration_residual < STALL_LEVEL and self.analyticity_residual < ANALYTICITY_TOL

    @property
    def c1(self) -> complex:
        return complex(self.coefficients[0])

    @property
    def orders(self) -> np.ndarray:
        return np.arange(1, self.coefficients.size + 1)

    def area(self) -> float:
        """pi * sum n |c_n|^2."""
        return float(math.pi * np.sum(self.orders * np.abs(self.coefficients) ** 2))

    def __call__(self, z):
        """Evaluate the truncated Taylor series at ``z`` (|z| <= 1)."""
        z = np.asarray(z, dtype=complex)
        return np.polynomial.polynomial.polyval(z, np.concatenate(([0.0], self.coefficients)))

    def derivative(self, z):
        z = np.asarray(z, dtype=complex)
        return np.polynomial.polynomial.polyval(z, self.orders * self.coefficients)


def _conjugate(values: np.ndarray) -> np.ndarray:
    """Circle conjugate function of real periodic samples (zero mean output)."""
    n = values.size
    spec = np.fft.fft(values)
    freq = np.fft.fftfreq(n, d=1.0 / n)
    mult = -1j * np.sign(freq)
    mult[n // 2] = 0.0
    return np.fft.ifft(spec * mult).real


def _spectral_derivative(values: np.ndarray) -> np.ndarray:
    n = values.size
    spec = np.fft.fft(values)
    freq = np.fft.fftfreq(n, d=1.0 / n)
    spec[n // 2] = 0.0
    return np.fft.ifft(1j * freq * spec).real


def _relaxation(rho_star: float) -> float:
    # contraction factor of the undamped step is about rho_star
    return 1.0 if rho_star < 1.0 else 1.0 / (1.0 + rho_star**2)


def _radius_function(spec: DomainSpec):
    if spec.offset == (0.0, 0.0):
        return lambda phi: geometry.polar_radius(spec, phi)
    angle_map = geometry._AngleMap(spec)
    return lambda phi: np.abs(spec.point(angle_map(phi)))


def _resample(phi: np.ndarray, theta: np.ndarray, n: int) -> np.ndarray:
    """Trigonometric interpolation of phi(theta) onto an n-point grid."""
    m = phi.size
    spec = np.fft.rfft(phi - theta)
    out = np.zeros(n // 2 + 1, dtype=complex)
    out[: spec.size] = spec
    out[m // 2] *= 0.5 if n > m else 1.0
    new_theta = TWO_PI * np.arange(n) / n
    return new_theta + np.fft.irfft(out, n) * (n / m)


def theodorsen_map(spec: DomainSpec, n_modes: int = 512, rho_star: float | None = None,
                   max_iter: int = MAX_ITER, tol: float = ITER_TOL,
                   initial: np.ndarray | None = None) -> ConformalMap:
    """Numerical conformal map of the disk onto ``spec`` fixing the origin."""
    if n_modes < 128 or n_modes & (n_modes - 1):
        raise ValueError("n_modes must be a power of two >= 128")
    if rho_star is None:
        rho_star = geometry.rho_star(spec)
    relax = _relaxation(rho_star)
    radius = _radius_function(spec)

    theta = TWO_PI * np.arange(n_modes) / n_modes
    phi = theta.copy() if initial is None else np.array(initial, dtype=float)
    resid = math.inf
    best, stalled = math.inf, 0
    it = 0
    for it in range(1, max_iter + 1):
        target = theta + _conjugate(np.log(radius(phi)))
        change = target - phi
        resid = float(np.max(np.abs(change)))
        phi = phi + relax * change
        if resid < tol or not math.isfinite(resid):
            break
        # on fine grids rounding floors the residual a little above tol
        if resid < 0.5 * best:
            best, stalled = resid, 0
        else:
            stalled += 1
        if best < STALL_LEVEL and stalled >= 20:
            break
    if resid >= STALL_LEVEL:
        log.warning("Theodorsen iteration stopped at residual %.3e after %d steps", resid, it)

    boundary = radius(phi) * np.exp(1j * phi)
    spectrum = np.fft.fft(boundary) / n_modes
    half = n_modes // 2
    coeffs = spectrum[1 : half + 1].copy()
    negative = spectrum[half + 1 :]
    analyticity = float(max(np.max(np.abs(negative)), abs(spectrum[0])))
    return ConformalMap(
        spec=spec,
        n_modes=n_modes,
        theta=theta,
        correspondence=phi,
        coefficients=coeffs,
        iteration_residual=resid,
        analyticity_residual=analyticity,
        iterations=it,
        relaxation=relax,
    )


def adaptive_map(spec: DomainSpec, n_min: int = 512, n_max: int = MAX_MODES,
                 rho_star: float | None = None) -> ConformalMap:
    """Double the grid until the map passes the analyticity gate (or n_max)."""
    if rho_star is None:
        rho_star = geometry.rho_star(spec)
    n = n_min
    cmap = theodorsen_map(spec, n, rho_star=rho_star)
    while not cmap.accepted and n < n_max:
        n *= 2
        start = _resample(cmap.correspondence, cmap.theta, n)
        cmap = theodorsen_map(spec, n, rho_star=rho_star, initial=start)
    return cmap


def require_accepted(cmap: ConformalMap) -> ConformalMap:
    if not cmap.accepted:
        raise ConformalMapError(
            f"conformal map rejected: iteration residual {cmap.iteration_residual:.2e}, "
            f"analyticity residual {cmap.analyticity_residual:.2e}"
        )
    return cmap


def hardy_norm_fprime(cmap: ConformalMap) -> float:
    """||f'|| in H^2 of the disk, from the Taylor coefficients."""
    n = cmap.orders
    return float(np.sqrt(np.sum(n**2 * np.abs(cmap.coefficients) ** 2)))


def boundary_speed(cmap: ConformalMap) -> np.ndarray:
    """|f'(e^{i theta_j})| on the map's grid from rho(phi) and phi'(theta).

    Independent of the Taylor coefficients: uses the analytic polar radius
    derivative and the spectral derivative of phi(theta) - theta.
    """
    rho, drho = geometry.polar_radius_deriv(cmap.spec, cmap.correspondence)
    dphi = 1.0 + _spectral_derivative(cmap.correspondence - cmap.theta)
    return np.hypot(rho, drho) * dphi


def hardy_norm_quadrature(cmap: ConformalMap) -> float:
    """((1/2pi) int |f'(e^{i theta})|^2 d theta)^{1/2} by the trapezoid rule."""
    return float(np.sqrt(np.mean(boundary_speed(cmap) ** 2)))


def hardy_discrepancy(cmap: ConformalMap) -> float:
    return abs(hardy_norm_fprime(cmap) - hardy_norm_quadrature(cmap))


@dataclass(frozen=True)
class BoundaryValue:
    point: complex | np.ndarray
    speed: float | np.ndarray
    curvature: float | np.ndarray


def eval_boundary(cmap: ConformalMap, theta) -> BoundaryValue:
    """Boundary point f(e^{i theta}), |f'(e^{i theta})| and the curvature there."""
    scalar = np.ndim(theta) == 0
    th = np.atleast_1d(np.asarray(theta, dtype=float))
    z = np.exp(1j * th)
    point = cmap(z)
    speed = np.abs(cmap.derivative(z))
    curv = geometry.signed_curvature(cmap.spec, np.angle(point))
    if scalar:
        return BoundaryValue(complex(point[0]), float(speed[0]), float(curv[0]))
    return BoundaryValue(point, speed, curv)


def grid_boundary(cmap: ConformalMap) -> BoundaryValue:
    """Boundary data on the map's own grid, using the correspondence directly."""
    t = geometry.boundary_param(cmap.spec, cmap.correspondence)
    point = cmap.spec.point(t)
    curv = geometry.curvature_at_param(cmap.spec, t)
    return BoundaryValue(point, boundary_speed(cmap), curv)


def total_curvature(cmap: ConformalMap) -> float:
    """Trapezoid value of the boundary integral of kappa(eta) |eta'| d theta."""
    bv = grid_boundary(cmap)
    return float(np.sum(bv.curvature * bv.speed) * TWO_PI / cmap.n_modes)
