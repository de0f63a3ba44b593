# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot loops in :mod:`cffrac._kernels_py`."""

import numpy as np

from cffrac.errors import QuadratureError

DEF INITIAL_PANELS = 4


def adaptive_simpson(f, double a, double b, double tol, long max_subdivisions):
    cdef double total = 0.0
    cdef long nsub = 0
    cdef double lo, hi, flo, fmid, fhi, whole, ptol, mid, lm, rm, flm, frm, left, right, delta
    cdef double h
    cdef int i
    cdef list stack = []
    if a == b:
        return 0.0, 0
    h = (b - a) / INITIAL_PANELS
    for i in range(INITIAL_PANELS):
        lo = a + i * h
        hi = b if i == INITIAL_PANELS - 1 else a + (i + 1) * h
        mid = 0.5 * (lo + hi)
        flo = f(lo)
        fmid = f(mid)
        fhi = f(hi)
        stack.append((lo, hi, flo, fmid, fhi, (hi - lo) * (flo + 4.0 * fmid + fhi) / 6.0, tol / INITIAL_PANELS))
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


def exp_filter_left(double[:] x, double k):
    cdef Py_ssize_t n = x.shape[0], i
    out = np.empty(n, dtype=np.float64)
    cdef double[:] y = out
    cdef double acc = 0.0
    for i in range(n):
        acc = k * acc + x[i]
        y[i] = acc
    return out


def exp_filter_right(double[:] x, double k):
    cdef Py_ssize_t n = x.shape[0], i
    out = np.empty(n, dtype=np.float64)
    cdef double[:] y = out
    cdef double acc = 0.0
    for i in range(n - 1, -1, -1):
        acc = k * acc + x[i]
        y[i] = acc
    return out
