import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.special import jn_zeros, jv

from diracbounds import specfun
from diracbounds.specfun import (
    RootNotBracketed,
    bessel_j,
    bessel_j_prime,
    bessel_j_signed,
    bessel_table,
    bessel_zero,
    phi,
    secular_function,
    secular_root,
    secular_roots,
)


@pytest.mark.parametrize("k", [0, 1, 2, 7, 20, 50])
@pytest.mark.parametrize("x", [0.0, 1e-8, 0.5, 1.9999, 2.0, 2.0001, 7.3, 12.0, 49.5, 120.0, 199.9])
def test_bessel_against_mpmath(k, x):
    ref = float(mpmath.besselj(k, mpmath.mpf(x)))
    assert bessel_j(k, x) == pytest.approx(ref, abs=1e-14)


@given(k=st.integers(0, 50), x=st.floats(0.0, 200.0))
def test_bessel_against_scipy(k, x):
    assert abs(bessel_j(k, x) - jv(k, x)) < 1e-13


@given(k=st.integers(1, 49), x=st.floats(0.01, 150.0))
def test_three_term_recurrence(k, x):
    lhs = bessel_j(k - 1, x) + bessel_j(k + 1, x)
    assert lhs == pytest.approx(2 * k / x * bessel_j(k, x), abs=1e-12 * max(1.0, 2 * k / x))


@given(k=st.integers(0, 20), x=st.floats(0.05, 100.0))
def test_derivative_by_finite_difference(k, x):
    h = 1e-5
    fd = (bessel_j(k, x + h) - bessel_j(k, x - h)) / (2 * h)
    assert bessel_j_prime(k, x) == pytest.approx(fd, abs=1e-9)


@given(k=st.integers(-50, 50), x=st.floats(-150.0, 150.0))
def test_signed_order_and_argument(k, x):
    assert bessel_j_signed(k, x) == pytest.approx(float(mpmath.besselj(k, x)), abs=1e-13)


def test_table_shape_and_rows():
    x = np.linspace(0, 30, 50)
    tab = bessel_table(5, x)
    assert tab.shape == (6, 50)
    assert np.allclose(tab[3], jv(3, x), atol=1e-14)


@pytest.mark.parametrize("bad", [(-1, 1.0), (51, 1.0), (1.5, 1.0), (0, -1.0), (0, math.nan), (0, math.inf)])
def test_domain_errors(bad):
    with pytest.raises(ValueError):
        bessel_j(*bad)


def test_principal_root_value(mu_d):
    r = secular_root(0, 1)
    assert r.mu == pytest.approx(1.434696, abs=1e-5)
    assert r.mu == mu_d
    assert r.residual < 1e-12
    # high-precision oracle for the same root
    ref = mpmath.findroot(lambda m: mpmath.besselj(0, m) - mpmath.besselj(1, m), 1.43)
    assert abs(r.mu - float(ref)) < 1e-12


@pytest.mark.parametrize("k", [0, 1, 3, 10, 25, 50])
@pytest.mark.parametrize("sign", [1, -1])
def test_roots_against_mpmath(k, sign):
    roots = secular_roots(k, 4, sign)
    for r in roots:
        ref = mpmath.findroot(lambda m: mpmath.besselj(k, m) - sign * mpmath.besselj(k + 1, m), r.mu)
        assert abs(r.mu - float(ref)) < 1e-11
        assert r.residual < 1e-12
    assert all(a.mu < b.mu for a, b in zip(roots, roots[1:]))


def test_no_root_missed_against_dense_scan():
    # any sign change of the secular function on a 1e-3 grid must be a returned root
    x = np.linspace(1e-3, 40, 40000)
    for k in (0, 2, 5):
        vals = jv(k, x) - jv(k + 1, x)
        n_changes = int(np.sum(np.sign(vals[1:]) != np.sign(vals[:-1])))
        roots = secular_roots(k, n_changes)
        assert roots[-1].mu < 40
        with pytest.raises(RootNotBracketed):
            secular_roots(k, n_changes + 200, ceiling=40.0)


def test_first_root_increases_with_order():
    firsts = [secular_root(k, 1).mu for k in range(51)]
    assert all(b > a for a, b in zip(firsts, firsts[1:]))


def test_secular_function_definition():
    assert secular_function(2, 3.0) == pytest.approx(jv(2, 3.0) - jv(3, 3.0), abs=1e-15)
    assert secular_function(2, 3.0, -1) == pytest.approx(jv(2, 3.0) + jv(3, 3.0), abs=1e-15)


@pytest.mark.parametrize("m", [0, -1, 2.5])
def test_bad_branch_index(m):
    with pytest.raises(ValueError):
        secular_root(0, m)


def test_bessel_zero_against_scipy():
    for k in (0, 1, 4):
        ref = jn_zeros(k, 3)
        for m in (1, 2, 3):
            z = bessel_zero(k, m)
            assert z == pytest.approx(ref[m - 1], abs=1e-12)
            assert abs(bessel_j(k, z)) < 1e-12


@given(a=st.floats(1e-3, 1e3), b=st.floats(1e-3, 1e3))
def test_phi_symmetric_and_matches_integral(a, b):
    assert phi(a, b) == phi(b, a)
    # Phi(a, b) is the mean of 1/t over [a, b]
    ref = float(mpmath.quad(lambda t: 1 / t, [min(a, b), max(a, b)]) / abs(a - b)) if a != b else 1 / a
    assert phi(a, b) == pytest.approx(ref, rel=1e-9)


@given(a=st.floats(0.01, 100.0), d=st.floats(-1e-6, 1e-6))
def test_phi_continuous_across_switch(a, d):
    b = a * (1 + d)
    with mpmath.workdps(50):
        A, B = mpmath.mpf(a), mpmath.mpf(b)
        exact = float((mpmath.log(A) - mpmath.log(B)) / (A - B)) if a != b else 1 / a
    assert phi(a, b) == pytest.approx(exact, rel=1e-12)


def test_phi_diagonal():
    assert phi(2.0, 2.0) == 0.5
    with pytest.raises(ValueError):
        phi(0.0, 1.0)


def test_max_order_constant():
    assert specfun.MAX_ORDER == 50
