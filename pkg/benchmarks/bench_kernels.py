"""Compare the compiled Bessel kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Also checks that both produce the same numbers on the benchmark inputs.
"""
import argparse
import timeit

import numpy as np

from diracbounds import _kernels_py

try:
    from diracbounds import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None


def cases():
    rng = np.random.default_rng(0)
    x_small = rng.uniform(0.0, 2.0, 2000)
    x_large = rng.uniform(2.0, 60.0, 2000)
    x_radial = 1.4346956508195947 * (0.5 * (np.polynomial.legendre.leggauss(64)[0] + 1))
    return [
        ("table n<=2, 64 radial nodes", lambda m: m.bessel_jn_table(2, x_radial)),
        ("table n<=51, 2000 pts x<=2", lambda m: m.bessel_jn_table(51, x_small)),
        ("table n<=51, 2000 pts x in [2,60]", lambda m: m.bessel_jn_table(51, x_large)),
        ("scalar J_0(1.43), 1000 calls", lambda m: [m.bessel_j_scalar(0, 1.4347) for _ in range(1000)]),
        ("scalar J_20(35.0), 1000 calls", lambda m: [m.bessel_j_scalar(20, 35.0) for _ in range(1000)]),
    ]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if _compiled is None:
        print("compiled extension not available; build with `pip install -e . --no-build-isolation`")
        return 1
    print(f"{'case':38s} {'python [ms]':>12s} {'compiled [ms]':>14s} {'speed-up':>9s} {'max diff':>9s}")
    for name, fn in cases():
        t_py = min(timeit.repeat(lambda: fn(_kernels_py), number=1, repeat=args.repeat))
        t_c = min(timeit.repeat(lambda: fn(_compiled), number=1, repeat=args.repeat))
        diff = float(np.max(np.abs(np.asarray(fn(_kernels_py)) - np.asarray(fn(_compiled)))))
        print(f"{name:38s} {t_py * 1e3:12.3f} {t_c * 1e3:14.3f} {t_py / t_c:8.1f}x {diff:9.1e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
