"""Integer time-scale grids, exact scalars, first-order differences and kernels.

Everything on the discrete side lives on a finite piece of the integer
time scale, ``{a, a+1, ..., b}``.  Values are :class:`fractions.Fraction`
so that identities can be checked with ``==``; plain floats are accepted
too and are used by the variational solver.
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Union

from .errors import DomainError, OrderError

Scalar = Fraction
Number = Union[Fraction, int, float]


def as_scalar(value) -> Fraction:
    """Convert ``value`` (int, Fraction, ``"p/q"`` string) to an exact scalar.

    Floats are refused: a float here almost always means exactness was lost
    upstream.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, numbers.Rational):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"cannot convert {value!r} to an exact scalar")


def format_scalar(value: Number) -> str:
    """Render an exact scalar as ``"p/q"`` (or ``"p"``), floats with repr."""
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


@dataclass(frozen=True)
class Order:
    """Fractional order ``alpha`` in ``[0, 1]`` with its normalization ``B(alpha)``.

    The normalization defaults to one for every order.
    """

    alpha: Fraction
    b_norm: Fraction = Fraction(1)

    def __post_init__(self):
        alpha = as_scalar(self.alpha)
        b_norm = as_scalar(self.b_norm)
        if not 0 <= alpha <= 1:
            raise OrderError(f"order must lie in [0, 1], got {alpha}")
        if b_norm == 0:
            raise OrderError("normalization B(alpha) must be nonzero")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "b_norm", b_norm)

    @property
    def lam(self) -> Fraction:
        """Kernel rate ``-alpha / (1 - alpha)``; undefined at ``alpha = 1``."""
        if self.alpha == 1:
            raise OrderError("kernel rate is undefined at alpha = 1")
        return -self.alpha / (1 - self.alpha)

    @property
    def decay(self) -> Fraction:
        """Discrete kernel base ``1 - alpha`` (equals ``1 / (1 - lam)``)."""
        return 1 - self.alpha

    def require_open(self, what: str = "operator") -> None:
        if not 0 < self.alpha < 1:
            raise OrderError(f"{what} needs 0 < alpha < 1, got {self.alpha}")

    def __str__(self):
        return format_scalar(self.alpha)


@dataclass(frozen=True)
class GridDomain:
    """The integer points ``{a, ..., b}``.

    A single point (``a == b``) is allowed because operators shrink their
    input grid by one point.
    """

    a: int
    b: int

    def __post_init__(self):
        if not (isinstance(self.a, numbers.Integral) and isinstance(self.b, numbers.Integral)):
            raise DomainError("grid endpoints must be integers")
        if self.a > self.b:
            raise DomainError(f"empty grid {{{self.a}..{self.b}}}")

    def __len__(self):
        return self.b - self.a + 1

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.a, self.b + 1))

    def __contains__(self, t) -> bool:
        return isinstance(t, numbers.Integral) and self.a <= t <= self.b

    def restrict(self, a: int | None = None, b: int | None = None) -> "GridDomain":
        return GridDomain(self.a if a is None else a, self.b if b is None else b)


@dataclass(frozen=True)
class GridFunction:
    """Values of a function at every point of a :class:`GridDomain`."""

    domain: GridDomain
    values: tuple

    def __post_init__(self):
        values = tuple(self.values)
        if len(values) != len(self.domain):
            raise DomainError(
                f"{len(values)} values for a grid of {len(self.domain)} points"
            )
        object.__setattr__(self, "values", values)

    @classmethod
    def on(cls, a: int, b: int, values: Iterable[Number]) -> "GridFunction":
        return cls(GridDomain(a, b), tuple(values))

    @classmethod
    def from_callable(cls, domain: GridDomain, fn: Callable[[int], Number]) -> "GridFunction":
        return cls(domain, tuple(fn(t) for t in domain))

    @property
    def a(self) -> int:
        return self.domain.a

    @property
    def b(self) -> int:
        return self.domain.b

    @property
    def exact(self) -> bool:
        return all(isinstance(v, (Fraction, int)) for v in self.values)

    def __call__(self, t: int):
        if t not in self.domain:
            raise DomainError(f"t={t} outside {{{self.a}..{self.b}}}")
        return self.values[t - self.a]

    def items(self):
        return zip(self.domain, self.values)

    def restrict(self, a: int | None = None, b: int | None = None) -> "GridFunction":
        dom = self.domain.restrict(a, b)
        if dom.a < self.a or dom.b > self.b:
            raise DomainError("restriction must stay inside the grid")
        return GridFunction(dom, self.values[dom.a - self.a : dom.b - self.a + 1])

    def map(self, fn: Callable) -> "GridFunction":
        return GridFunction(self.domain, tuple(fn(v) for v in self.values))

    def _binary(self, other, op):
        if isinstance(other, GridFunction):
            if other.domain != self.domain:
                raise DomainError("grid functions live on different grids")
            return GridFunction(self.domain, tuple(op(x, y) for x, y in zip(self.values, other.values)))
        return GridFunction(self.domain, tuple(op(x, other) for x in self.values))

    def __add__(self, other):
        return self._binary(other, lambda x, y: x + y)

    def __sub__(self, other):
        return self._binary(other, lambda x, y: x - y)

    def __mul__(self, other):
        return self._binary(other, lambda x, y: x * y)

    __radd__ = __add__
    __rmul__ = __mul__

    def __neg__(self):
        return self.map(lambda x: -x)


def nabla_diff(f: GridFunction) -> GridFunction:
    """Backward difference ``f(t) - f(t-1)`` on ``{a+1, ..., b}``."""
    if len(f.domain) < 2:
        raise DomainError("backward difference needs at least two points")
    v = f.values
    return GridFunction.on(f.a + 1, f.b, (v[i] - v[i - 1] for i in range(1, len(v))))


def delta_diff(f: GridFunction) -> GridFunction:
    """Forward difference ``f(t+1) - f(t)`` on ``{a, ..., b-1}``."""
    if len(f.domain) < 2:
        raise DomainError("forward difference needs at least two points")
    v = f.values
    return GridFunction.on(f.a, f.b - 1, (v[i + 1] - v[i] for i in range(len(v) - 1)))


def q_reflect(f: GridFunction, pivot: int | None = None) -> GridFunction:
    """Reflection ``(Qf)(t) = f(pivot - t)``; ``pivot`` defaults to ``a + b``.

    Pass the pivot of the parent grid when reflecting an operator output that
    only covers part of it, e.g. a left difference on ``{a+1..b}`` maps onto
    ``{a..b-1}``.
    """
    if pivot is None:
        pivot = f.a + f.b
    return GridFunction.on(pivot - f.b, pivot - f.a, reversed(f.values))


def nabla_exp(lam, k: int) -> Fraction:
    """Nabla exponential ``(1 / (1 - lam))**k`` on the integers."""
    lam = as_scalar(lam)
    if lam == 1:
        raise DomainError("nabla exponential is undefined at lam = 1")
    return (1 / (1 - lam)) ** k


def delta_exp(lam, k: int) -> Fraction:
    """Delta exponential ``(1 + lam)**k`` on the integers."""
    lam = as_scalar(lam)
    if lam == -1:
        raise DomainError("delta exponential is undefined at lam = -1")
    return (1 + lam) ** k


def cf_kernel(order: Order, k: int) -> Fraction:
    """Discrete exponential kernel ``(1 - alpha)**k`` with ``0**0 == 1``."""
    if k < 0:
        raise DomainError(f"kernel lag must be nonnegative, got {k}")
    # Fraction(0) ** 0 == 1 already, which gives the Kronecker kernel at alpha = 1.
    return order.decay ** k


def kernel_table(order: Order, n: int) -> list:
    """``[cf_kernel(order, 0), ..., cf_kernel(order, n-1)]``."""
    return [cf_kernel(order, j) for j in range(n)]
