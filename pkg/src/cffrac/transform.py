"""Nabla discrete Laplace transform on a tiny exact signal algebra.

The transform based at ``a`` is ``N_a f(z) = sum_{t=a+1}^inf (1-z)^(t-1) f(t)``.
Two signal shapes are supported, both zero before their base:

* :class:`FiniteSignal` -- finitely many samples ``f(base), f(base+1), ...``;
* :class:`GeometricSignal` -- ``c * r**(t - base)`` for ``t >= base``.

This is closed under backward differences and under the exponential-kernel
fractional differences of finite signals, which is all the transform
identities need.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from . import discrete
from .errors import DomainError, TransformError
from .grid import GridFunction, Order, as_scalar


@dataclass(frozen=True)
class FiniteSignal:
    """Samples ``values[j] = f(base + j)``; zero everywhere else."""

    base: int
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(as_scalar(v) for v in self.values))

    def __call__(self, t: int) -> Fraction:
        j = t - self.base
        if 0 <= j < len(self.values):
            return self.values[j]
        return Fraction(0)

    @property
    def last(self) -> int:
        return self.base + len(self.values) - 1


@dataclass(frozen=True)
class GeometricSignal:
    """``f(t) = c * r**(t - base)`` for ``t >= base``."""

    c: Fraction
    r: Fraction
    base: int = 0

    def __post_init__(self):
        object.__setattr__(self, "c", as_scalar(self.c))
        object.__setattr__(self, "r", as_scalar(self.r))
        if self.r == 0:
            raise DomainError("geometric ratio must be nonzero")

    def __call__(self, t: int) -> Fraction:
        if t < self.base:
            return Fraction(0)
        return self.c * self.r ** (t - self.base)


Signal = Union[FiniteSignal, GeometricSignal]


def nabla_exponential_signal(lam, base: int = 0) -> GeometricSignal:
    """The nabla exponential ``(1/(1-lam))**(t - base)`` as a signal."""
    lam = as_scalar(lam)
    if lam == 1:
        raise DomainError("nabla exponential is undefined at lam = 1")
    return GeometricSignal(1, 1 / (1 - lam), base)


def _power(w: Fraction, k: int) -> Fraction:
    try:
        return w ** k
    except ZeroDivisionError:
        raise TransformError(f"(1 - z)**{k} is infinite at z = 1") from None


def laplace(f: Signal, z, base: int | None = None) -> Fraction:
    """``N_base f(z)``, exactly.  ``base`` defaults to the signal's base.

    Geometric signals need ``|1 - z| * |r| < 1``; outside that region the
    sum diverges and :class:`TransformError` is raised.
    """
    z = as_scalar(z)
    w = 1 - z
    if base is None:
        base = f.base
    if isinstance(f, FiniteSignal):
        return sum(
            (_power(w, t - 1) * f(t) for t in range(max(base + 1, f.base), f.last + 1)),
            Fraction(0),
        )
    ratio = w * f.r
    if abs(ratio) >= 1:
        raise TransformError(f"transform of {f} diverges at z = {z}")
    start = max(base + 1, f.base)
    return f.c * f.r ** (start - f.base) * _power(w, start - 1) / (1 - ratio)


def laplace_truncated(f: Signal, z, n_terms: int, base: int | None = None) -> Fraction:
    """First ``n_terms`` terms of the transform sum, for cross-checking."""
    z = as_scalar(z)
    if base is None:
        base = f.base
    start = max(base + 1, f.base)
    return sum((_power(1 - z, t - 1) * f(t) for t in range(start, start + n_terms)), Fraction(0))


def rebase(g: FiniteSignal, base: int = 0) -> FiniteSignal:
    """Same samples, read from a new base (``values[j] -> g(base + j)``)."""
    return FiniteSignal(base, g.values)


def convolve(f: FiniteSignal, g: FiniteSignal) -> FiniteSignal:
    """Nabla convolution ``(f*g)(t) = sum_{s=a+1}^{t} g(t - s + 1) f(s)``.

    ``g`` is read by offset from its own base (``g(r)`` means
    ``g.values[r]``), which is the reading under which the convolution
    theorem holds with ``g``'s transform based at 0.
    """
    if not (isinstance(f, FiniteSignal) and isinstance(g, FiniteSignal)):
        raise TypeError("convolution is defined for finite signals")
    if f.base != g.base:
        raise DomainError(f"signals based at {f.base} and {g.base}")
    a = f.base
    n, m = len(f.values), len(g.values)
    last = a + (n - 1) + (m - 1) - 1
    out = [Fraction(0)]
    for t in range(a + 1, last + 1):
        acc = Fraction(0)
        for s in range(max(a + 1, t - m + 2), min(t, f.last) + 1):
            acc += g.values[t - s + 1] * f(s)
        out.append(acc)
    return FiniteSignal(a, out)


def nabla_signal(f: Signal) -> Signal:
    """Backward difference of a signal, valid for ``t >= base + 1``.

    The sample at the base itself is not meaningful and is not read by
    ``N_base``.
    """
    if isinstance(f, FiniteSignal):
        vals = [Fraction(0)] + [f(t) - f(t - 1) for t in range(f.base + 1, f.last + 2)]
        return FiniteSignal(f.base, vals)
    return GeometricSignal(f.c * (f.r - 1) / f.r, f.r, f.base)


def convolution_theorem_check(f: FiniteSignal, g: FiniteSignal, z):
    """``(N_a(f*g)(z), N_a f(z) * N_0 g(z))``; equal for every ``z``."""
    lhs = laplace(convolve(f, g), z)
    rhs = laplace(f, z) * laplace(rebase(g, 0), z)
    return lhs, rhs


def nabla_shift_check(f: Signal, z, a: int | None = None):
    """``(N_a(nabla f)(z), z N_a f(z) - (1-z)^a f(a))``."""
    z = as_scalar(z)
    if a is None:
        a = f.base
    lhs = laplace(nabla_signal(f), z, base=a)
    rhs = z * laplace(f, z, base=a) - _power(1 - z, a) * f(a)
    return lhs, rhs


def laplace_of_discrete_operators(f: FiniteSignal, order: Order, z) -> Fraction:
    """``N_a`` of the left Riemann difference of a finite signal.

    Past the last sample ``T`` the difference decays like ``(1-alpha)**t``;
    it is split into the exact finite part on ``a+1..T`` and a geometric tail
    based at ``T``.
    """
    order.require_open("transform of a fractional difference")
    z = as_scalar(z)
    if z == order.lam:
        raise TransformError(f"z = {z} is the pole of the transformed kernel")
    a, last = f.base, f.last
    if last <= a:
        return Fraction(0)
    grid_f = GridFunction.on(a, last, f.values)
    head = discrete.cfr_left(grid_f, order)
    k = order.decay
    weight = sum((f(s) * k ** (last - s) for s in range(a + 1, last + 1)), Fraction(0))
    tail_first = -order.alpha * order.b_norm * weight
    total = laplace(FiniteSignal(a, (0,) + head.values), z)
    if tail_first != 0:
        tail = GeometricSignal(tail_first / k, k, last)
        total += laplace(tail, z, base=last)
    return total


def riemann_transform_check(f: FiniteSignal, order: Order, z):
    """Both sides of ``N_a(cfr_left f)(z) = B/(1-alpha) z F(z) / (z - lam)``."""
    z = as_scalar(z)
    lhs = laplace_of_discrete_operators(f, order, z)
    rhs = order.b_norm / (1 - order.alpha) * z * laplace(f, z) / (z - order.lam)
    return lhs, rhs
