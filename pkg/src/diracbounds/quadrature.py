"""Radial integrals over (0, 1) shared by the disk and transplantation code."""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .specfun import bessel_table, secular_root

DEFAULT_RADIAL_ORDER = 64


@lru_cache(maxsize=None)
def gauss_legendre_01(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on (0, 1); open rule, no node at r = 0."""
    x, w = np.polynomial.legendre.leggauss(order)
    return 0.5 * (x + 1.0), 0.5 * w


@lru_cache(maxsize=None)
def mu_disk() -> float:
    """Principal eigenvalue of the unit disk."""
    return secular_root(0, 1).mu


def radial_profile(order: int, mu: float | None = None):
    """r, w, J_0(mu r), J_1(mu r), J_2(mu r) on the Gauss-Legendre nodes."""
    mu = mu_disk() if mu is None else mu
    r, w = gauss_legendre_01(order)
    tab = bessel_table(2, mu * r)
    return r, w, tab[0], tab[1], tab[2]


def radial_weight_series(mu: float, terms: int = 40) -> np.ndarray:
    """Coefficients a_m with J_0(mu r)^2 + J_1(mu r)^2 = sum_m a_m r^(2m)."""
    h = (0.5 * mu) ** 2
    j0 = np.array([(-h) ** m / math.factorial(m) ** 2 for m in range(terms)])
    # J_1(x)^2 = (x/2)^2 (sum_m (-h)^m / (m! (m+1)!))^2
    s1 = np.array([(-h) ** m / (math.factorial(m) * math.factorial(m + 1)) for m in range(terms)])
    sq0 = np.convolve(j0, j0)[:terms]
    sq1 = np.zeros(terms)
    sq1[1:] = h * np.convolve(s1, s1)[: terms - 1]
    return sq0 + sq1


def weighted_moments(nmax: int, mu: float | None = None) -> np.ndarray:
    """M_n = int_0^1 (J_0(mu r)^2 + J_1(mu r)^2) r^(2n-1) dr for n = 1..nmax.

    Integrated term by term from the even power series of the weight, which
    stays exact for the very high powers that defeat a fixed quadrature.
    """
    mu = mu_disk() if mu is None else mu
    a = radial_weight_series(mu)
    m = np.arange(a.size)
    n = np.arange(1, nmax + 1)
    return (a[None, :] / (2.0 * m[None, :] + 2.0 * n[:, None])).sum(axis=1)
