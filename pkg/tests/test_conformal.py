import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diracbounds import conformal as c
from diracbounds import geometry as g

TWO_PI = 2 * math.pi

ELLIPSES = [g.ellipse(1.1, 1 / 1.1), g.ellipse(1.5, 0.75), g.ellipse(1.3, 1.0), g.ellipse(1.2, 0.9, (0.1, 0.05)),
            g.ellipse(1.4, 1.0, (-0.2, 0.0))]
POLARS = [g.polar_fourier(1.0, [0, 0, 0.1], []), g.polar_fourier(1.0, [0, 0.1], [0.05]),
          g.polar_fourier(1.0, [0.1, 0, 0.05], []), g.polar_fourier(1.0, [0, 0, 0, 0.08], [0, 0.04]),
          g.DomainSpec(g.perturbed_circle(0.1, 5))]


@pytest.fixture(scope="module")
def maps():
    return {i: c.adaptive_map(s) for i, s in enumerate(ELLIPSES + POLARS)}


def test_centered_disk_is_scaling():
    m = c.theodorsen_map(g.disk(1.7), 256)
    assert m.accepted
    assert m.c1 == pytest.approx(1.7, abs=1e-14)
    assert np.max(np.abs(m.coefficients[1:])) < 1e-14


@pytest.mark.parametrize("shift", [0.1, 0.5, -0.3])
def test_shifted_disk_matches_mobius(shift):
    # f(z) = s + (z - s) / (1 - s z) has c_n = (1 - s^2) s^(n-1)
    m = c.adaptive_map(g.disk(1.0, (shift, 0.0)))
    assert m.accepted
    n = np.arange(1, 41)
    expect = (1 - shift**2) * shift ** (n - 1)
    assert np.max(np.abs(m.coefficients[:40] - expect)) < 1e-12
    hardy = math.sqrt((1 + shift**2) / (1 - shift**2))
    assert c.hardy_norm_fprime(m) == pytest.approx(hardy, rel=1e-12)


def test_boundary_on_ellipse(maps):
    spec = ELLIPSES[1]
    m = maps[1]
    theta = np.linspace(0, TWO_PI, 97)
    w = m(np.exp(1j * theta)) - spec.center
    assert np.max(np.abs((w.real / 1.5) ** 2 + (w.imag / 0.75) ** 2 - 1)) < 1e-10


def test_series_matches_correspondence(maps):
    for i, spec in enumerate(ELLIPSES + POLARS):
        m = maps[i]
        z = np.exp(1j * m.theta)
        target = g.polar_radius(spec, m.correspondence) * np.exp(1j * m.correspondence)
        assert np.max(np.abs(m(z) - target)) < 1e-9


def test_maps_accepted(maps):
    assert all(m.accepted for m in maps.values())


def test_area_formula_and_koebe_at_512():
    for spec in ELLIPSES + POLARS:
        m = c.theodorsen_map(spec, 512)
        area, _ = g.area_perimeter(spec)
        assert abs(area - m.area()) / area < 1e-7
        r_i, r_o = g.origin_radii(spec)
        assert r_i < abs(m.c1) < r_o


def test_total_curvature(maps):
    for m in maps.values():
        assert c.total_curvature(m) == pytest.approx(-TWO_PI, abs=1e-8)


def test_hardy_norm_two_ways(maps):
    for m in maps.values():
        assert c.hardy_discrepancy(m) < 1e-9


def test_normalisation(maps):
    for m in maps.values():
        assert abs(m(0.0)) == 0
        assert abs(m.c1.imag) < 1e-12 and m.c1.real > 0


def test_resolution_convergence():
    spec = ELLIPSES[1]
    a = c.theodorsen_map(spec, 512)
    b = c.theodorsen_map(spec, 1024)
    assert np.max(np.abs(a.coefficients[:100] - b.coefficients[:100])) < 1e-12


def test_elongated_ellipse_needs_refinement():
    spec = g.ellipse(1.6, 1 / 1.6)
    coarse = c.theodorsen_map(spec, 512)
    assert not coarse.accepted
    with pytest.raises(c.ConformalMapError):
        c.require_accepted(coarse)
    fine = c.adaptive_map(spec)
    assert fine.accepted and fine.n_modes > 512
    assert c.total_curvature(fine) == pytest.approx(-TWO_PI, abs=1e-8)


def test_relaxation_handles_rho_star_above_one():
    spec = g.DomainSpec(g.perturbed_circle(0.2, 5))
    assert g.rho_star(spec) > 1
    m = c.adaptive_map(spec)
    assert m.accepted and m.relaxation < 1


def test_invalid_grid():
    with pytest.raises(ValueError):
        c.theodorsen_map(g.disk(1.0), 300)
    with pytest.raises(ValueError):
        c.theodorsen_map(g.disk(1.0), 64)


def test_conjugate_of_cosine_is_sine():
    t = TWO_PI * np.arange(64) / 64
    assert np.allclose(c._conjugate(np.cos(3 * t)), np.sin(3 * t), atol=1e-14)


def test_resample_is_exact_for_band_limited():
    t = TWO_PI * np.arange(128) / 128
    phi = t + 0.1 * np.sin(3 * t) + 0.02 * np.cos(7 * t)
    out = c._resample(phi, t, 512)
    tt = TWO_PI * np.arange(512) / 512
    assert np.allclose(out, tt + 0.1 * np.sin(3 * tt) + 0.02 * np.cos(7 * tt), atol=1e-14)


def test_eval_boundary_consistent_with_grid(maps):
    m = maps[5]
    bv = c.grid_boundary(m)
    ev = c.eval_boundary(m, m.theta[:64])
    assert np.allclose(ev.point, bv.point[:64], atol=1e-10)
    assert np.allclose(ev.speed, bv.speed[:64], atol=1e-8)
    assert np.allclose(ev.curvature, bv.curvature[:64], atol=1e-8)
    one = c.eval_boundary(m, 0.3)
    assert isinstance(one.speed, float)


@settings(max_examples=10)
@given(alpha=st.floats(0.3, 3.0), angle=st.floats(0.0, TWO_PI))
def test_scaling_and_rotation_covariance(alpha, angle):
    shape = g.PolarFourier(1.0, (0.05, 0.1), (0.02,))
    base = c.theodorsen_map(g.DomainSpec(shape), 256)
    moved = c.theodorsen_map(g.DomainSpec(shape.rotated(angle).scaled(alpha)), 256)
    assert np.allclose(np.abs(moved.coefficients[:30]), alpha * np.abs(base.coefficients[:30]), atol=1e-11)
    assert c.hardy_norm_fprime(moved) == pytest.approx(alpha * c.hardy_norm_fprime(base), rel=1e-11)
