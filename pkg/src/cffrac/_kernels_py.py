"""Pure-Python reference versions of the compiled kernels.

Same signatures and results as ``_kernels.pyx``; selected automatically when
the extension is not built.
"""

import numpy as np

from .errors import QuadratureError

INITIAL_PANELS = 4


def adaptive_simpson(f, a, b, tol, max_subdivisions):
    """Adaptive Simpson rule with Richardson correction.

    Returns ``(value, subdivisions)``.  Each panel is accepted once the
    difference between one and two Simpson steps is below ``15 * tol_panel``;
    the tolerance halves with every bisection so the panel errors sum to at
    most ``tol``.
    """
    a = float(a)
    b = float(b)
    if a == b:
        return 0.0, 0
    total = 0.0
    nsub = 0
    h = (b - a) / INITIAL_PANELS
    stack = []
    for i in range(INITIAL_PANELS):
        lo = a + i * h
        hi = b if i == INITIAL_PANELS - 1 else a + (i + 1) * h
        mid = 0.5 * (lo + hi)
        flo, fmid, fhi = f(lo), f(mid), f(hi)
        whole = (hi - lo) * (flo + 4.0 * fmid + fhi) / 6.0
        stack.append((lo, hi, flo, fmid, fhi, whole, tol / INITIAL_PANELS))
    while stack:
        lo, hi, flo, fmid, fhi, whole, ptol = stack.pop()
        mid = 0.5 * (lo + hi)
        lm = 0.5 * (lo + mid)
        rm = 0.5 * (mid + hi)
        flm = f(lm)
        frm = f(rm)
        left = (mid - lo) * (flo + 4.0 * flm + fmid) / 6.0
        right = (hi - mid) * (fmid + 4.0 * frm + fhi) / 6.0
        delta = left + right - whole
        if abs(delta) <= 15.0 * ptol:
            total += left + right + delta / 15.0
            continue
        nsub += 1
        if nsub > max_subdivisions or lm == lo or rm == hi:
            raise QuadratureError(
                f"no convergence on [{a}, {b}] within {max_subdivisions} subdivisions"
            )
        stack.append((lo, mid, flo, flm, fmid, left, 0.5 * ptol))
        stack.append((mid, hi, fmid, frm, fhi, right, 0.5 * ptol))
    return total, nsub


def exp_filter_left(x, k):
    """``y[i] = k * y[i-1] + x[i]`` with ``y[-1] = 0``."""
    out = np.empty(len(x), dtype=np.float64)
    acc = 0.0
    for i, xi in enumerate(x):
        acc = k * acc + xi
        out[i] = acc
    return out


def exp_filter_right(x, k):
    """``y[i] = k * y[i+1] + x[i]`` with ``y[n] = 0``."""
    n = len(x)
    out = np.empty(n, dtype=np.float64)
    acc = 0.0
    for i in range(n - 1, -1, -1):
        acc = k * acc + x[i]
        out[i] = acc
    return out
