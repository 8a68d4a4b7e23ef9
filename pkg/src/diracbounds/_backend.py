"""Select the Bessel kernel implementation at import time.

The compiled extension is preferred. Setting ``DIRACBOUNDS_BACKEND=python``
forces the pure-Python fallback, which is what the test-suite uses to check
that both paths agree.
"""
import os

from . import _kernels_py

_requested = os.environ.get("DIRACBOUNDS_BACKEND", "auto").lower()

if _requested == "python":
    kernels = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]
        BACKEND = "compiled"
    except ImportError:
        if _requested == "compiled":
            raise
        kernels = _kernels_py
        BACKEND = "python"

bessel_j_scalar = kernels.bessel_j_scalar
bessel_jn_table = kernels.bessel_jn_table
bessel_j_array = kernels.bessel_j_array
