import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.special import jv

from diracbounds import diskspec as ds
from diracbounds.specfun import secular_root


@pytest.fixture(scope="module")
def spectrum():
    return ds.disk_spectrum(1.0, 10, 5)


def test_principal_eigenvalue(spectrum, mu_d):
    p = ds.principal(spectrum)
    assert p.k == 0 and p.branch == 1
    assert p.mu == pytest.approx(1.434696, abs=1e-5)
    assert ds.principal(ds.disk_spectrum(2.0, 3, 2)).mu == pytest.approx(mu_d / 2, rel=1e-15)


def test_symmetry_and_no_zero(spectrum):
    values = Counter(round(p.mu, 12) for p in spectrum)
    assert values == Counter(round(-p.mu, 12) for p in spectrum)
    assert all(abs(p.mu) > 0.5 for p in spectrum)
    assert len(spectrum) == 11 * 5 * 4


def test_residuals_and_fibers(spectrum):
    for p in spectrum:
        assert p.secular_residual < 1e-12
        # signed Bessel functions, so the same equation holds on every fiber and sign
        assert abs(jv(p.k, p.mu) - jv(p.k + 1, p.mu)) < 1e-12
    ks = {p.k for p in spectrum}
    assert ks == set(range(-11, 11))


def test_mirror_relation(spectrum):
    by_fiber = {}
    for p in spectrum:
        by_fiber.setdefault(p.k, []).append(p.mu)
    for k in range(11):
        assert sorted(by_fiber[k]) == pytest.approx(sorted(-m for m in by_fiber[-(k + 1)]))


def test_positive_minimum_at_k0_and_monotone():
    firsts = [secular_root(k, 1).mu for k in range(51)]
    assert np.argmin(firsts) == 0
    assert all(b >= a for a, b in zip(firsts, firsts[1:]))


@pytest.mark.parametrize("radius", [0.5, 1.0, 3.0])
def test_lower_bound_and_scaling(radius, mu_d):
    p = ds.principal(ds.disk_spectrum(radius, 2, 2))
    assert p.mu > math.sqrt(2) / radius
    assert p.mu * radius == pytest.approx(mu_d, rel=1e-15)


@pytest.mark.parametrize("args", [(0.0, 1, 1), (1.0, 51, 1), (1.0, 1, 21), (1.0, 1, 0), (-1.0, 1, 1), (1.0, 1.5, 1)])
def test_argument_validation(args):
    with pytest.raises(ValueError):
        ds.disk_spectrum(*args)


def test_eigenfunction_at_origin(spectrum):
    p = ds.principal(spectrum)
    u1, u2 = ds.disk_eigenfunction(p, 0.0, 1.3)
    assert u2 == 0
    assert u1 == pytest.approx(p.norm)


@pytest.mark.parametrize("radius", [1.0, 2.5])
def test_boundary_condition(radius):
    for p in ds.disk_spectrum(radius, 5, 3):
        for theta in (0.0, 0.7, 2.9, 5.5):
            u1, u2 = ds.disk_eigenfunction(p, radius, theta)
            assert u2 / (1j * np.exp(1j * theta) * u1) == pytest.approx(1.0, abs=1e-10)


def test_reject_outside(spectrum):
    with pytest.raises(ValueError):
        ds.disk_eigenfunction(spectrum[0], 1.01, 0.0)
    with pytest.raises(ValueError):
        ds.disk_eigenfunction(spectrum[0], -0.1, 0.0)


def _dirac(pair, x, y, h=2e-4):
    """-i(sigma_1 d_x + sigma_2 d_y) u by fourth-order central differences."""
    def u(px, py):
        return np.array(ds.disk_eigenfunction(pair, math.hypot(px, py), math.atan2(py, px)))

    def d(step):
        return (8 * (u(x + step[0], y + step[1]) - u(x - step[0], y - step[1]))
                - (u(x + 2 * step[0], y + 2 * step[1]) - u(x - 2 * step[0], y - 2 * step[1]))) / (12 * h)

    dx = d((h, 0.0))
    dy = d((0.0, h))
    return np.array([-1j * (dx[1] - 1j * dy[1]), -1j * (dx[0] + 1j * dy[0])]), u(x, y)


def test_first_order_system_residual(spectrum):
    rng = np.random.default_rng(7)
    picks = [p for p in spectrum if abs(p.k) <= 3 and abs(p.mu) < 12]
    for _ in range(100):
        p = picks[rng.integers(len(picks))]
        r = rng.uniform(0.05, 0.95)
        th = rng.uniform(0, 2 * math.pi)
        hu, val = _dirac(p, r * math.cos(th), r * math.sin(th))
        assert np.max(np.abs(hu - p.mu * val)) < 1e-9 * max(1.0, abs(p.mu))


def _inner(a, b, radius=1.0, nr=200, nt=64):
    x, w = np.polynomial.legendre.leggauss(nr)
    r = 0.5 * radius * (x + 1)
    w = 0.5 * radius * w
    th = 2 * math.pi * np.arange(nt) / nt
    R, T = np.meshgrid(r, th, indexing="ij")
    ua = ds.disk_eigenfunction(a, R, T)
    ub = ds.disk_eigenfunction(b, R, T)
    integrand = np.sum(np.conj(ua) * ub, axis=0)
    return np.sum(w[:, None] * R * integrand) * 2 * math.pi / nt


@pytest.mark.parametrize("radius", [1.0, 2.0])
def test_normalised_and_orthogonal(radius):
    pairs = [p for p in ds.disk_spectrum(radius, 2, 2) if abs(p.k) <= 2]
    for p in pairs:
        assert _inner(p, p, radius).real == pytest.approx(1.0, abs=1e-10)
    # eigenfunctions of a self-adjoint operator with distinct eigenvalues are orthogonal
    same_fiber = [(a, b) for a in pairs for b in pairs if a.k == b.k and a.mu < b.mu]
    assert same_fiber
    for a, b in same_fiber:
        assert abs(_inner(a, b, radius)) < 1e-10


def test_rayleigh_identity(mu_d):
    assert ds.rayleigh_check_disk() == pytest.approx(mu_d**2, abs=1e-8)
    assert abs(ds.rayleigh_quotient_disk(32) - ds.rayleigh_quotient_disk(64)) < 1e-9


def test_j1_over_r_is_regular(mu_d):
    r = np.array([1e-3, 1e-4, 1e-5])
    vals = jv(1, mu_d * r) ** 2 / r
    assert np.allclose(vals / r, mu_d**2 / 4, rtol=1e-5)


@given(k=st.integers(0, 50), m=st.integers(1, 20))
def test_every_fiber_root_satisfies_secular_equation(k, m):
    p = secular_root(k, m)
    assert abs(jv(k, p.mu) - jv(k + 1, p.mu)) < 1e-12
