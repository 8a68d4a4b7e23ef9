"""Compiled and pure-Python Bessel kernels against each other and against scipy."""
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.special import jv

from diracbounds import _kernels_py

compiled = pytest.importorskip("diracbounds._kernels")

GRID = np.concatenate([np.linspace(0.0, 2.0, 101), np.linspace(2.0001, 200.0, 997)])


@pytest.mark.parametrize("mod", [_kernels_py, compiled], ids=["python", "compiled"])
def test_table_matches_scipy(mod):
    tab = mod.bessel_jn_table(51, GRID)
    ref = jv(np.arange(52)[:, None], GRID[None, :])
    assert tab.shape == (52, GRID.size)
    assert np.max(np.abs(tab - ref)) < 1e-13


def test_backends_agree():
    a = _kernels_py.bessel_jn_table(51, GRID)
    b = compiled.bessel_jn_table(51, GRID)
    assert np.max(np.abs(a - b)) < 1e-15


@given(n=st.integers(0, 51), x=st.floats(0.0, 200.0))
def test_scalar_backends_agree(n, x):
    a = _kernels_py.bessel_j_scalar(n, x)
    b = compiled.bessel_j_scalar(n, x)
    assert abs(a - b) <= 1e-15
    assert a == pytest.approx(_kernels_py.bessel_j_array(n, np.array([x]))[0], abs=1e-15)


@given(n=st.integers(0, 60), x=st.floats(0.0, 300.0))
def test_miller_start_identical_and_even(n, x):
    s = _kernels_py.miller_start(n, x)
    assert s == compiled.miller_start(n, x)
    assert s % 2 == 0 and s > max(n, x)


def test_zero_argument():
    for mod in (_kernels_py, compiled):
        assert mod.bessel_j_scalar(0, 0.0) == 1.0
        assert mod.bessel_j_scalar(3, 0.0) == 0.0


def test_env_var_selects_python_backend():
    env = dict(os.environ, DIRACBOUNDS_BACKEND="python")
    out = subprocess.run(
        [sys.executable, "-c", "import diracbounds; print(diracbounds.BACKEND)"],
        capture_output=True, text=True, env=env, check=True,
    )
    assert out.stdout.strip() == "python"


def test_default_backend_is_compiled():
    from diracbounds import _backend

    if os.environ.get("DIRACBOUNDS_BACKEND", "auto") != "python":
        assert _backend.BACKEND == "compiled"
