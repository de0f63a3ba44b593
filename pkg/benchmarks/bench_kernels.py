"""Compare the compiled kernels with the pure-Python fallback.

Run: ``python benchmarks/bench_kernels.py [--repeat N]``

Each kernel is timed on both backends with identical inputs; the results
are also compared so a speedup never hides a disagreement.
"""

from __future__ import annotations

import argparse
import math
import timeit

import numpy as np

from cffrac import _kernels_py

try:
    from cffrac import _kernels as _compiled
except ImportError:
    _compiled = None


def cases():
    x = np.random.default_rng(0).standard_normal(20_000)
    lam = -1.0

    def integrand(s):
        return math.sin(3 * s) * math.exp(lam * (1 - s))

    return {
        "adaptive_simpson(sin*exp, 1e-12)": lambda m: m.adaptive_simpson(integrand, 0.0, 1.0, 1e-12, 200_000)[0],
        "exp_filter_left(n=20000)": lambda m: m.exp_filter_left(x, 0.75),
        "exp_filter_right(n=20000)": lambda m: m.exp_filter_right(x, 0.75),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if _compiled is None:
        print("compiled extension not built; only the fallback can be timed")
    print(f"{'kernel':36s} {'python [ms]':>12s} {'compiled [ms]':>14s} {'speedup':>8s} {'max diff':>10s}")
    for name, call in cases().items():
        t_py = min(timeit.repeat(lambda: call(_kernels_py), number=1, repeat=args.repeat)) * 1e3
        if _compiled is None:
            print(f"{name:36s} {t_py:12.3f} {'-':>14s}")
            continue
        t_c = min(timeit.repeat(lambda: call(_compiled), number=1, repeat=args.repeat)) * 1e3
        diff = float(np.max(np.abs(np.asarray(call(_kernels_py)) - np.asarray(call(_compiled)))))
        print(f"{name:36s} {t_py:12.3f} {t_c:14.3f} {t_py / t_c:8.1f} {diff:10.2e}")


if __name__ == "__main__":
    main()
