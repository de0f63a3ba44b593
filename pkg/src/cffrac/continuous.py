"""Continuous Caputo-Fabrizio operators evaluated by adaptive quadrature.

All operators use the kernel ``exp(lam * |t - s|)`` with
``lam = -alpha / (1 - alpha)`` and prefactor ``B / (1 - alpha)``.  The
Riemann-type derivatives are evaluated through the Leibniz expansion::

    d/dt int_a^t f(s) e^{lam (t-s)} ds = f(t) + lam int_a^t f(s) e^{lam (t-s)} ds

so nothing is differentiated numerically.  Everything here is float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import _accel
from .discrete import Side
from .errors import DomainError
from .grid import Order


@dataclass(frozen=True)
class SmoothFunction:
    """A real function on an interval, optionally with its derivative."""

    eval: Callable[[float], float]
    deriv: Optional[Callable[[float], float]] = None
    label: str = ""

    def __call__(self, t: float) -> float:
        return self.eval(t)

    def derivative(self, t: float, h: float = 1e-5) -> float:
        if self.deriv is not None:
            return self.deriv(t)
        return (self.eval(t + h) - self.eval(t - h)) / (2.0 * h)

    def reflect(self, a: float, b: float) -> "SmoothFunction":
        """``t -> f(a + b - t)``."""
        f, df = self.eval, self.deriv
        return SmoothFunction(
            lambda t: f(a + b - t),
            None if df is None else (lambda t: -df(a + b - t)),
            f"Q[{self.label}]",
        )


@dataclass(frozen=True)
class Interval:
    a: float
    b: float

    def __post_init__(self):
        if not self.a < self.b:
            raise DomainError(f"empty interval [{self.a}, {self.b}]")


@dataclass(frozen=True)
class QuadratureConfig:
    """Adaptive Simpson settings.

    ``max_subdivisions`` bounds the total number of panel bisections per
    integral; ``fd_step`` is used only for functions without a derivative.
    """

    abs_tol: float = 1e-10
    max_subdivisions: int = 200_000
    fd_step: float = 1e-5

    def __post_init__(self):
        if self.abs_tol <= 0 or self.fd_step <= 0:
            raise ValueError("abs_tol and fd_step must be positive")


DEFAULT_QUADRATURE = QuadratureConfig()


def integrate(fn: Callable[[float], float], lo: float, hi: float,
              q: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """``int_lo^hi fn``, oriented (``lo > hi`` flips the sign)."""
    if lo == hi:
        return 0.0
    if lo > hi:
        return -integrate(fn, hi, lo, q)
    value, _ = _accel.adaptive_simpson(fn, float(lo), float(hi), q.abs_tol, q.max_subdivisions)
    return value


@dataclass(frozen=True)
class _Params:
    alpha: float
    b_norm: float
    lam: float
    scale: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "scale", self.b_norm / (1.0 - self.alpha))


def _params(order: Order) -> _Params:
    order.require_open("continuous operator")
    return _Params(float(order.alpha), float(order.b_norm), float(order.lam))


def cfc_left_c(f: SmoothFunction, order: Order, a: float, t: float,
               q: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """Left Caputo derivative ``B/(1-alpha) int_a^t f'(s) e^{lam (t-s)} ds``."""
    p = _params(order)
    if t < a:
        raise DomainError("left operator evaluated before its base point")
    h = q.fd_step
    return p.scale * integrate(lambda s: f.derivative(s, h) * math.exp(p.lam * (t - s)), a, t, q)


def cfc_right_c(f: SmoothFunction, order: Order, t: float, b: float,
                q: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """Right Caputo derivative ``-B/(1-alpha) int_t^b f'(s) e^{lam (s-t)} ds``."""
    p = _params(order)
    if t > b:
        raise DomainError("right operator evaluated after its end point")
    h = q.fd_step
    return -p.scale * integrate(lambda s: f.derivative(s, h) * math.exp(p.lam * (s - t)), t, b, q)


def kernel_integral_left(f: Callable[[float], float], lam: float, a: float, t: float,
                         q: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """``int_a^t f(s) e^{lam (t-s)} ds``."""
    return integrate(lambda s: f(s) * math.exp(lam * (t - s)), a, t, q)


def kernel_integral_right(f: Callable[[float], float], lam: float, t: float, b: float,
                          q: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """``int_t^b f(s) e^{lam (s-t)} ds``."""
    return integrate(lambda s: f(s) * math.exp(lam * (s - t)), t, b, q)


def cfr_left_c(f: Callable[[float], float], order: Order, a: float, t: float,
               q: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """Left Riemann derivative, ``B/(1-alpha) [f(t) + lam int_a^t f e^{lam (t-s)}]``."""
    p = _params(order)
    if t < a:
        raise DomainError("left operator evaluated before its base point")
    return p.scale * (f(t) + p.lam * kernel_integral_left(f, p.lam, a, t, q))


def cfr_right_c(f: Callable[[float], float], order: Order, t: float, b: float,
                q: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """Right Riemann derivative, ``B/(1-alpha) [f(t) + lam int_t^b f e^{lam (s-t)}]``."""
    p = _params(order)
    if t > b:
        raise DomainError("right operator evaluated after its end point")
    return p.scale * (f(t) + p.lam * kernel_integral_right(f, p.lam, t, b, q))


def cfr_left_raw(f: Callable[[float], float], order: Order, a: float, t: float,
                 h: float, q: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """Left Riemann derivative by centered differencing of the kernel integral.

    Only used to cross-check the Leibniz form; error is ``O(h**2)``.
    """
    p = _params(order)
    up = kernel_integral_left(f, p.lam, a, t + h, q)
    down = kernel_integral_left(f, p.lam, a, t - h, q)
    return p.scale * (up - down) / (2.0 * h)


def cf_int_left_c(u: Callable[[float], float], order: Order, a: float, t: float,
                  q: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """Left fractional integral ``(1-alpha)/B u(t) + alpha/B int_a^t u``."""
    p = _params(order)
    return ((1.0 - p.alpha) * u(t) + p.alpha * integrate(u, a, t, q)) / p.b_norm


def cf_int_right_c(u: Callable[[float], float], order: Order, t: float, b: float,
                   q: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """Right fractional integral ``(1-alpha)/B u(t) + alpha/B int_t^b u``."""
    p = _params(order)
    return ((1.0 - p.alpha) * u(t) + p.alpha * integrate(u, t, b, q)) / p.b_norm


def exp_int_left_c(phi: Callable[[float], float], lam: float, a: float, x: float,
                   q: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """``int_a^x e^{lam (t-a)} phi(t) dt`` (kernel anchored at ``a``)."""
    lam = float(lam)
    return integrate(lambda t: math.exp(lam * (t - a)) * phi(t), a, x, q)


def exp_int_right_c(phi: Callable[[float], float], lam: float, b: float, x: float,
                    q: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """``int_x^b e^{lam (b-t)} phi(t) dt`` (kernel anchored at ``b``)."""
    lam = float(lam)
    return integrate(lambda t: math.exp(lam * (b - t)) * phi(t), x, b, q)


def boundary_exp_left_c(phi: Callable[[float], float], lam: float, a: float, x: float,
                        q: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """``int_a^x e^{lam (x-t)} phi(t) dt`` (kernel anchored at ``x``).

    This, not :func:`exp_int_left_c`, is the boundary operator for which the
    Caputo integration-by-parts formula holds.
    """
    return kernel_integral_left(phi, float(lam), a, x, q)


def boundary_exp_right_c(phi: Callable[[float], float], lam: float, x: float, b: float,
                         q: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """``int_x^b e^{lam (t-x)} phi(t) dt`` (kernel anchored at ``x``)."""
    return kernel_integral_right(phi, float(lam), x, b, q)


def caputo_inversion_check_c(f: SmoothFunction, order: Order, endpoint: float, x: float,
                             q: QuadratureConfig = DEFAULT_QUADRATURE,
                             side: Side | str = Side.LEFT):
    """``(I^alpha D_C^alpha f)(x)`` against ``f(x) - f(endpoint)``.

    ``endpoint`` is ``a`` for the left pair and ``b`` for the right pair.
    """
    side = Side(side)
    if side is Side.LEFT:
        lhs = cf_int_left_c(lambda s: cfc_left_c(f, order, endpoint, s, q), order, endpoint, x, q)
    else:
        lhs = cf_int_right_c(lambda s: cfc_right_c(f, order, s, endpoint, q), order, x, endpoint, q)
    return lhs, f(x) - f(endpoint)


def polynomial(coeffs) -> SmoothFunction:
    """``sum_i coeffs[i] t**i`` with its exact derivative."""
    cs = [float(c) for c in coeffs]

    def ev(t: float) -> float:
        acc = 0.0
        for c in reversed(cs):
            acc = acc * t + c
        return acc

    def dv(t: float) -> float:
        acc = 0.0
        for i in range(len(cs) - 1, 0, -1):
            acc = acc * t + i * cs[i]
        return acc

    label = " + ".join(f"{c:.6g}*t^{i}" for i, c in enumerate(cs)) or "0"
    return SmoothFunction(ev, dv, label)


def battery() -> list:
    """Smooth test functions: 1, t, t^2, e^{-t}, e^{t/2} and sin t."""
    return [
        SmoothFunction(lambda t: 1.0, lambda t: 0.0, "1"),
        SmoothFunction(lambda t: t, lambda t: 1.0, "t"),
        SmoothFunction(lambda t: t * t, lambda t: 2.0 * t, "t^2"),
        SmoothFunction(lambda t: math.exp(-t), lambda t: -math.exp(-t), "exp(-t)"),
        SmoothFunction(lambda t: math.exp(0.5 * t), lambda t: 0.5 * math.exp(0.5 * t), "exp(t/2)"),
        SmoothFunction(math.sin, math.cos, "sin"),
    ]


BY_PARTS_KINDS = ("integral", "riemann", "caputo_left", "caputo_right")


def by_parts_c_check(f: SmoothFunction, g: SmoothFunction, order: Order, interval: Interval,
                     q: QuadratureConfig = DEFAULT_QUADRATURE, kind: str = "riemann"):
    """Both sides of an integration-by-parts identity on ``[a, b]``.

    ``kind`` selects the identity:

    ``"integral"``
        ``int f I_a g == int g I_b f`` (fractional integrals).
    ``"riemann"``
        ``int f D^R_a g == int D^R_b f g``.
    ``"caputo_left"``
        ``int D^C_a f g == int f D^R_b g + B/(1-alpha) [f(x) E_b g(x)]_a^b``
        with ``E_b g(x) = int_x^b e^{lam (t-x)} g(t) dt``.
    ``"caputo_right"``
        ``int D^C_b f g == int f D^R_a g - B/(1-alpha) [f(x) E_a g(x)]_a^b``
        with ``E_a g(x) = int_a^x e^{lam (x-t)} g(t) dt``.

    Each side is a double quadrature, so agreement is limited by the inner
    tolerance times the interval length.
    """
    a, b = interval.a, interval.b
    p = _params(order)
    if kind == "integral":
        lhs = integrate(lambda x: f(x) * cf_int_left_c(g, order, a, x, q), a, b, q)
        rhs = integrate(lambda x: g(x) * cf_int_right_c(f, order, x, b, q), a, b, q)
    elif kind == "riemann":
        lhs = integrate(lambda x: f(x) * cfr_left_c(g, order, a, x, q), a, b, q)
        rhs = integrate(lambda x: cfr_right_c(f, order, x, b, q) * g(x), a, b, q)
    elif kind == "caputo_left":
        lhs = integrate(lambda x: cfc_left_c(f, order, a, x, q) * g(x), a, b, q)
        body = integrate(lambda x: f(x) * cfr_right_c(g, order, x, b, q), a, b, q)
        boundary = (f(b) * boundary_exp_right_c(g, p.lam, b, b, q)
                    - f(a) * boundary_exp_right_c(g, p.lam, a, b, q))
        rhs = body + p.scale * boundary
    elif kind == "caputo_right":
        lhs = integrate(lambda x: cfc_right_c(f, order, x, b, q) * g(x), a, b, q)
        body = integrate(lambda x: f(x) * cfr_left_c(g, order, a, x, q), a, b, q)
        boundary = (f(b) * boundary_exp_left_c(g, p.lam, a, b, q)
                    - f(a) * boundary_exp_left_c(g, p.lam, a, a, q))
        rhs = body - p.scale * boundary
    else:
        raise ValueError(f"unknown identity {kind!r}; expected one of {BY_PARTS_KINDS}")
    return lhs, rhs
