"""Rayleigh quotient of the disk ground state transplanted onto a mapped domain.

For a conformal map ``f`` of the unit disk onto the domain (``f(0) = 0``)
and ``mu`` the principal disk eigenvalue, the test spinor built from
``J_0(mu r)`` and ``J_1(mu r)`` gives ``mu_1(Omega)^2 <= (N1 + N2 + N3) / D``
with

    N1 = 2 pi mu^2 int_0^1 (J_0'(mu r)^2 + J_1'(mu r)^2) r dr
    N2 = int_0^1 J_1(mu r)^2 / r dr * int_0^{2 pi} kappa(eta)^2 |eta'|^2 dtheta
    N3 = 2 pi J_0(mu)^2
    D  = int_0^1 (J_0(mu r)^2 + J_1(mu r)^2) int_0^{2 pi} |f'(r e^{i theta})|^2 dtheta r dr

where ``eta(theta) = f(e^{i theta})``. The inner integral of ``D`` is
``2 pi sum n^2 |c_n|^2 r^(2n-2)`` by Parseval, and each radial moment is
integrated exactly from a power series.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .conformal import ConformalMap, grid_boundary, require_accepted
from .geometry import TWO_PI, DomainSpec
from .quadrature import DEFAULT_RADIAL_ORDER, mu_disk, radial_profile, weighted_moments
from .specfun import bessel_j


@dataclass(frozen=True)
class TransplantResult:
    n1: float
    n2: float
    n3: float
    d: float
    bound: float
    radial_integral_j1: float
    angular_integral: float
    h_integral: float
    d_tail: float
    quadrature_orders: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "n1": self.n1,
            "n2": self.n2,
            "n3": self.n3,
            "d": self.d,
            "bound": self.bound,
            "radial_integral_j1": self.radial_integral_j1,
            "angular_integral": self.angular_integral,
            "h_integral": self.h_integral,
            "d_tail": self.d_tail,
            "quadrature_orders": dict(self.quadrature_orders),
        }


def n3_constant() -> float:
    return TWO_PI * bessel_j(0, mu_disk()) ** 2


def radial_integrals(order: int = DEFAULT_RADIAL_ORDER) -> tuple[float, float, float]:
    """(int (J_0'^2 + J_1'^2) r dr, int J_1^2 / r dr, int r (J_0^2 + J_1^2) dr)."""
    mu = mu_disk()
    r, w, j0, j1, j2 = radial_profile(order, mu)
    grad = np.sum(w * (j1**2 + 0.25 * (j0 - j2) ** 2) * r)
    j1_over_r = np.sum(w * j1**2 / r)
    h = np.sum(w * (j0**2 + j1**2) * r)
    return float(grad), float(j1_over_r), float(h)


def transplant_quotient(cmap: ConformalMap, spec: DomainSpec | None = None,
                        radial_order: int = DEFAULT_RADIAL_ORDER) -> TransplantResult:
    """Evaluate N1, N2, N3, D and the upper bound sqrt((N1 + N2 + N3) / D)."""
    require_accepted(cmap)
    if spec is not None and spec != cmap.spec:
        raise ValueError("conformal map was computed for a different domain")
    if radial_order < 8:
        raise ValueError("radial_order must be at least 8")
    mu = mu_disk()
    grad, j1_over_r, h_int = radial_integrals(radial_order)
    n1 = TWO_PI * mu**2 * grad

    bv = grid_boundary(cmap)
    angular = float(np.sum(bv.curvature**2 * bv.speed**2) * TWO_PI / cmap.n_modes)
    n2 = j1_over_r * angular
    n3 = n3_constant()

    n = cmap.orders
    weights = n**2 * np.abs(cmap.coefficients) ** 2
    terms = TWO_PI * weights * weighted_moments(n.size, mu)
    d = float(np.sum(terms))
    # the upper half of the retained band bounds what truncation could miss
    d_tail = float(np.sum(terms[n.size // 2 :]))

    bound = math.sqrt((n1 + n2 + n3) / d)
    return TransplantResult(
        n1=n1, n2=n2, n3=n3, d=d, bound=bound,
        radial_integral_j1=j1_over_r, angular_integral=angular,
        h_integral=h_int, d_tail=d_tail,
        quadrature_orders={"radial": radial_order, "angular": cmap.n_modes,
                           "series_terms": int(n.size)},
    )


def h_derivative(r) -> np.ndarray:
    """H'(r) = J_0(mu r)^2 - J_1(mu r)^2 for H(r) = r (J_0^2 + J_1^2)(mu r)."""
    from .specfun import bessel_table

    tab = bessel_table(1, mu_disk() * np.asarray(r, dtype=float))
    return tab[0] ** 2 - tab[1] ** 2


def h_monotonicity_check(samples: int = 10_000) -> float:
    """Smallest H'(r) over ``samples`` equispaced interior points of (0, 1)."""
    if samples < 100:
        raise ValueError("samples must be >= 100")
    r = np.arange(1, samples + 1) / (samples + 1)
    return float(np.min(h_derivative(r)))
