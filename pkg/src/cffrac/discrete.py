"""Discrete nabla fractional differences and sums with exponential kernel.

With ``k = 1 - alpha`` and normalization ``B``::

    left Caputo    B * sum_{s=a+1}^{t} (f(s) - f(s-1)) k^(t-s)        t in a+1..b
    right Caputo   B * sum_{s=t}^{b-1} (f(s) - f(s+1)) k^(s-t)        t in a..b-1
    left Riemann   B * (g(t) - g(t-1)),  g(t) = sum_{s=a+1}^{t} f(s) k^(t-s)
    right Riemann  B * (h(t) - h(t+1)),  h(t) = sum_{s=t}^{b-1} f(s) k^(s-t)
    left sum       (1-alpha)/B u(t) + alpha/B sum_{s=a+1}^{t} u(s)
    right sum      (1-alpha)/B u(t) + alpha/B sum_{s=t}^{b-1} u(s)

Empty sums are zero, so ``g(a) = h(b) = 0``.  Exact inputs give exact
outputs; float inputs go through the (possibly compiled) recurrence kernels.

Left operators take an optional base ``a`` and right operators an optional
end ``b``.  They default to the grid ends.  Riemann differences and sums
never read ``f(a)`` (left) or ``f(b)`` (right), so their input may start at
``a + 1`` (or stop at ``b - 1``); this is what lets operators compose.
"""

from __future__ import annotations

import enum

import numpy as np

from . import _accel
from . import grid as _grid
from .errors import DomainError, OrderError
from .grid import GridFunction, Order


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


def _is_exact(values) -> bool:
    return all(isinstance(v, int) or hasattr(v, "denominator") for v in values)


def _running_left(values, order: Order) -> list:
    """``g[i] = sum_{j <= i} values[j] * k**(i - j)``."""
    if _is_exact(values):
        w = _grid.kernel_table(order, len(values))
        return [sum(values[j] * w[i - j] for j in range(i + 1)) for i in range(len(values))]
    return _accel.exp_filter_left(np.asarray(values, dtype=float), float(order.decay)).tolist()


def _running_right(values, order: Order) -> list:
    """``h[i] = sum_{j >= i} values[j] * k**(j - i)``."""
    if _is_exact(values):
        n = len(values)
        w = _grid.kernel_table(order, n)
        return [sum(values[j] * w[j - i] for j in range(i, n)) for i in range(n)]
    return _accel.exp_filter_right(np.asarray(values, dtype=float), float(order.decay)).tolist()


def _left_base(f: GridFunction, a: int | None, need_base_value: bool) -> int:
    if a is None:
        a = f.a
    lowest = a if need_base_value else a + 1
    if f.a > lowest:
        raise DomainError(f"operator based at {a} needs values from t={lowest}")
    if a >= f.b:
        raise DomainError(f"empty summation range: base {a} is not below {f.b}")
    return a


def _right_end(f: GridFunction, b: int | None, need_end_value: bool) -> int:
    if b is None:
        b = f.b
    highest = b if need_end_value else b - 1
    if f.b < highest:
        raise DomainError(f"operator ending at {b} needs values up to t={highest}")
    if b <= f.a:
        raise DomainError(f"empty summation range: end {b} is not above {f.a}")
    return b


def cfc_left(f: GridFunction, order: Order, a: int | None = None) -> GridFunction:
    """Left Caputo fractional difference on ``{a+1, ..., b}``."""
    a = _left_base(f, a, need_base_value=True)
    v = f.restrict(a, f.b).values
    diffs = [v[i] - v[i - 1] for i in range(1, len(v))]
    g = _running_left(diffs, order)
    return GridFunction.on(a + 1, f.b, (order.b_norm * x for x in g))


def cfc_right(f: GridFunction, order: Order, b: int | None = None) -> GridFunction:
    """Right Caputo fractional difference on ``{a, ..., b-1}``."""
    b = _right_end(f, b, need_end_value=True)
    v = f.restrict(f.a, b).values
    diffs = [v[i] - v[i + 1] for i in range(len(v) - 1)]
    h = _running_right(diffs, order)
    return GridFunction.on(f.a, b - 1, (order.b_norm * x for x in h))


def cfr_left(f: GridFunction, order: Order, a: int | None = None) -> GridFunction:
    """Left Riemann fractional difference on ``{a+1, ..., b}``.

    At ``t = a + 1`` the outer difference uses ``g(a) = 0``.
    """
    a = _left_base(f, a, need_base_value=False)
    g = _running_left(f.restrict(a + 1, f.b).values, order)
    prev = [0] + g[:-1]
    return GridFunction.on(a + 1, f.b, (order.b_norm * (x - y) for x, y in zip(g, prev)))


def cfr_right(f: GridFunction, order: Order, b: int | None = None) -> GridFunction:
    """Right Riemann fractional difference on ``{a, ..., b-1}``.

    ``b`` may be one past the last grid point; ``f(b)`` is never read.
    """
    b = _right_end(f, b, need_end_value=False)
    h = _running_right(f.restrict(f.a, b - 1).values, order)
    nxt = h[1:] + [0]
    return GridFunction.on(f.a, b - 1, (order.b_norm * (x - y) for x, y in zip(h, nxt)))


def cf_sum_left(u: GridFunction, order: Order, a: int | None = None) -> GridFunction:
    """Left fractional sum, the inverse of :func:`cfr_left`.

    Defined on the part of ``u``'s grid at or after ``a``.
    """
    order.require_open("fractional sum")
    if a is None:
        a = u.a
    if u.a > a + 1:
        raise DomainError(f"sum based at {a} needs values from t={a + 1}")
    start = max(a, u.a)
    c0 = (1 - order.alpha) / order.b_norm
    c1 = order.alpha / order.b_norm
    out = []
    acc = 0
    for t in range(start, u.b + 1):
        if t > a:
            acc = acc + u(t)
        out.append(c0 * u(t) + c1 * acc)
    return GridFunction.on(start, u.b, out)


def cf_sum_right(u: GridFunction, order: Order, b: int | None = None) -> GridFunction:
    """Right fractional sum, the inverse of :func:`cfr_right`."""
    order.require_open("fractional sum")
    if b is None:
        b = u.b
    if u.b < b - 1:
        raise DomainError(f"sum ending at {b} needs values up to t={b - 1}")
    stop = min(b, u.b)
    c0 = (1 - order.alpha) / order.b_norm
    c1 = order.alpha / order.b_norm
    out = []
    acc = 0
    for t in range(stop, u.a - 1, -1):
        if t < b:
            acc = acc + u(t)
        out.append(c0 * u(t) + c1 * acc)
    return GridFunction.on(u.a, stop, reversed(out))


def caputo_riemann_gap(f: GridFunction, order: Order, side: Side | str = Side.LEFT) -> GridFunction:
    """Correction term with ``Caputo = Riemann - gap`` pointwise.

    Left: ``B/(1-alpha) f(a) (1-alpha)^(t-a)`` on ``{a+1..b}``;
    right: ``B/(1-alpha) f(b) (1-alpha)^(b-t)`` on ``{a..b-1}``.
    """
    side = Side(side)
    if order.alpha == 1:
        raise OrderError("the Caputo/Riemann gap divides by 1 - alpha")
    scale = order.b_norm / (1 - order.alpha)
    k = order.decay
    if side is Side.LEFT:
        fa = f(f.a)
        return GridFunction.on(f.a + 1, f.b, (scale * fa * k ** (t - f.a) for t in range(f.a + 1, f.b + 1)))
    fb = f(f.b)
    return GridFunction.on(f.a, f.b - 1, (scale * fb * k ** (f.b - t) for t in range(f.a, f.b)))


def _check_pair(f: GridFunction, g: GridFunction) -> None:
    if f.domain != g.domain:
        raise DomainError("both functions must live on the same grid")
    if f.b - f.a < 3:
        raise DomainError("integration by parts needs b - a >= 3")


def by_parts_riemann_check(f: GridFunction, g: GridFunction, order: Order):
    """Both sides of the summation-by-parts identity for Riemann differences.

    ``sum_{t=a+1}^{b-1} f(t) cfr_left(g)(t)`` and
    ``sum_{t=a+1}^{b-1} cfr_right(f)(t) g(t)``.
    """
    _check_pair(f, g)
    order.require_open("integration by parts")
    left = cfr_left(g, order)
    right = cfr_right(f, order)
    ts = range(f.a + 1, f.b)
    lhs = sum(f(t) * left(t) for t in ts)
    rhs = sum(right(t) * g(t) for t in ts)
    return lhs, rhs


def by_parts_sum_check(phi: GridFunction, psi: GridFunction, order: Order):
    """Both sides of ``sum phi * sum_left(psi) == sum psi * sum_right(phi)``.

    Sums run over ``t = a+1 .. b-1``.
    """
    _check_pair(phi, psi)
    left = cf_sum_left(psi, order)
    right = cf_sum_right(phi, order)
    ts = range(phi.a + 1, phi.b)
    lhs = sum(phi(t) * left(t) for t in ts)
    rhs = sum(psi(t) * right(t) for t in ts)
    return lhs, rhs


__all__ = [
    "Side",
    "by_parts_riemann_check",
    "by_parts_sum_check",
    "caputo_riemann_gap",
    "cf_sum_left",
    "cf_sum_right",
    "cfc_left",
    "cfc_right",
    "cfr_left",
    "cfr_right",
]
