"""Discrete fractional calculus of variations with exponential kernel.

A problem lives on a grid ``{p, ..., q}`` (the action's boundary points are
``p`` and ``q``).  The action is::

    J(y) = sum_{t=p+1}^{q} L(t, y(t-1), D y(t)),   D = left Caputo difference based at p

Its gradient with respect to an interior value ``y(j)`` is::

    dJ/dy(j) = L1(j+1) + R[L2](j)

where ``R`` is the right Riemann difference whose sum runs up to ``q``
(i.e. ended at ``q + 1``).  :func:`el_residual` returns exactly this, so a
zero residual is the Euler-Lagrange equation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Union

import numpy as np

from . import discrete
from .errors import ConvergenceError, DomainError, OrderError
from .grid import GridDomain, GridFunction, Order, as_scalar, nabla_exp


# -- discrete exponential integral operators ---------------------------------

def _phi_range(phi: GridFunction, lo: int, hi: int):
    return (phi(s) for s in range(lo, hi + 1))


def exp_int_left_d(phi: GridFunction, lam, t: int, a: Optional[int] = None):
    """``sum_{s=a+1}^{t} (1/(1-lam))^(t-a) phi(s)``, exponent fixed by ``t - a``."""
    a = phi.a if a is None else a
    if t <= a:
        return Fraction(0)
    return nabla_exp(lam, t - a) * sum(_phi_range(phi, a + 1, t))


def exp_int_right_d(phi: GridFunction, lam, t: int, b: Optional[int] = None):
    """``sum_{s=t}^{b-1} (1/(1-lam))^(b-s) phi(s)``."""
    b = phi.b if b is None else b
    return sum((nabla_exp(lam, b - s) * phi(s) for s in range(t, b)), Fraction(0))


def boundary_exp_left_d(phi: GridFunction, lam, t: int, a: Optional[int] = None):
    """``sum_{s=a+1}^{t} (1/(1-lam))^(t+1-s) phi(s)``.

    The exponent counts from the evaluation point; this is the operator for
    which the Caputo summation-by-parts formula is exact.
    """
    a = phi.a - 1 if a is None else a
    return sum((nabla_exp(lam, t + 1 - s) * phi(s) for s in range(a + 1, t + 1)), Fraction(0))


def boundary_exp_right_d(phi: GridFunction, lam, t: int, b: Optional[int] = None):
    """``sum_{s=t}^{b-1} (1/(1-lam))^(s+1-t) phi(s)``."""
    b = phi.b + 1 if b is None else b
    return sum((nabla_exp(lam, s + 1 - t) * phi(s) for s in range(t, b)), Fraction(0))


def by_parts_caputo_d_check(f: GridFunction, g: GridFunction, order: Order, side="left"):
    """Both sides of summation by parts for Caputo differences on ``{p..q}``.

    Left::

        sum_{t=p+1}^{q} Dc_p f(t) g(t)
            = sum_{t=p+1}^{q} f(t) Dr^{q+1} g(t) + B/(1-alpha) [f(t-1) E_R g(t)]_{t=p+1}^{q+1}

    Right::

        sum_{t=p}^{q-1} Dc^q f(t) g(t)
            = sum_{t=p}^{q-1} f(t) Dr_{p-1} g(t) - B/(1-alpha) [f(t+1) E_L g(t)]_{t=p-1}^{q-1}

    ``E_R`` and ``E_L`` are :func:`boundary_exp_right_d` and
    :func:`boundary_exp_left_d`; both vanish at the far end of the bracket.
    """
    side = discrete.Side(side)
    if f.domain != g.domain:
        raise DomainError("both functions must live on the same grid")
    p, q = f.a, f.b
    if q - p < 2:
        raise DomainError("Caputo summation by parts needs at least three points")
    order.require_open("integration by parts")
    lam = order.lam
    scale = order.b_norm / (1 - order.alpha)
    if side is discrete.Side.LEFT:
        cap = discrete.cfc_left(f, order)
        rie = discrete.cfr_right(g, order, b=q + 1)
        ts = range(p + 1, q + 1)
        lhs = sum(cap(t) * g(t) for t in ts)
        body = sum(f(t) * rie(t) for t in ts)
        boundary = (f(q) * boundary_exp_right_d(g, lam, q + 1, b=q + 1)
                    - f(p) * boundary_exp_right_d(g, lam, p + 1, b=q + 1))
        return lhs, body + scale * boundary
    cap = discrete.cfc_right(f, order)
    rie = discrete.cfr_left(g, order, a=p - 1)
    ts = range(p, q)
    lhs = sum(cap(t) * g(t) for t in ts)
    body = sum(f(t) * rie(t) for t in ts)
    boundary = (f(q) * boundary_exp_left_d(g, lam, q - 1, a=p - 1)
                - f(p) * boundary_exp_left_d(g, lam, p - 1, a=p - 1))
    return lhs, body - scale * boundary


# -- Lagrangians ---------------------------------------------------------------

@dataclass(frozen=True)
class Potential:
    """``V(y)`` with its first two derivatives."""

    V: Callable
    dV: Callable
    d2V: Callable
    label: str = ""


def zero_potential() -> Potential:
    return Potential(lambda y: 0 * y, lambda y: 0 * y, lambda y: 0 * y, "zero")


def harmonic_potential(k) -> Potential:
    """``V(y) = k y**2 / 2``."""
    k = as_scalar(k)
    return Potential(lambda y: k * y * y / 2, lambda y: k * y, lambda y: k + 0 * y, f"harmonic(k={k})")


def cos_well_potential(k) -> Potential:
    """``k (1 - cos y)`` truncated after the ``y**6`` term."""
    k = as_scalar(k)
    c2, c4, c6 = Fraction(1, 2), Fraction(-1, 24), Fraction(1, 720)
    return Potential(
        lambda y: k * (c2 * y**2 + c4 * y**4 + c6 * y**6),
        lambda y: k * (2 * c2 * y + 4 * c4 * y**3 + 6 * c6 * y**5),
        lambda y: k * (2 * c2 + 12 * c4 * y**2 + 30 * c6 * y**4),
        f"cos_well(k={k})",
    )


@dataclass(frozen=True)
class DiscreteLagrangian:
    """``L(t, y, d)`` with partials ``L1 = dL/dy`` and ``L2 = dL/dd``.

    Second partials are optional; when all three are present the solver
    assembles the exact Hessian.
    """

    L: Callable
    L1: Callable
    L2: Callable
    label: str = ""
    L11: Optional[Callable] = None
    L12: Optional[Callable] = None
    L22: Optional[Callable] = None

    @property
    def has_hessian(self) -> bool:
        return None not in (self.L11, self.L12, self.L22)


def kinetic_lagrangian(potential: Potential) -> DiscreteLagrangian:
    """``L = d**2 / 2 - V(y)``."""
    V, dV, d2V = potential.V, potential.dV, potential.d2V
    return DiscreteLagrangian(
        L=lambda t, y, d: d * d / 2 - V(y),
        L1=lambda t, y, d: -dV(y),
        L2=lambda t, y, d: d,
        label=f"kinetic-{potential.label}",
        L11=lambda t, y, d: -d2V(y),
        L12=lambda t, y, d: 0 * d,
        L22=lambda t, y, d: 1 + 0 * d,
    )


# -- problems --------------------------------------------------------------------

@dataclass(frozen=True)
class FixedBC:
    A: Union[Fraction, float]
    B: Union[Fraction, float]


@dataclass(frozen=True)
class NaturalBC:
    pass


@dataclass(frozen=True)
class ActionProblem:
    """Lagrangian, grid ``{p..q}``, order and boundary conditions.

    ``alpha = 1`` is allowed: the Caputo difference is then the backward
    difference and the problem is the classical discrete one.
    """

    lagrangian: DiscreteLagrangian
    grid: GridDomain
    order: Order
    bc: Union[FixedBC, NaturalBC] = field(default_factory=NaturalBC)

    def __post_init__(self):
        if self.order.alpha == 0:
            raise OrderError("variational problems need 0 < alpha <= 1")
        if len(self.grid) < 4:
            raise DomainError("a variational problem needs at least two interior points")

    @property
    def interior(self) -> range:
        return range(self.grid.a + 1, self.grid.b)


@dataclass(frozen=True)
class ELSolution:
    y: GridFunction
    residual_norm: float
    action_value: float
    iterations: int
    converged: bool = True


def _check_aligned(problem: ActionProblem, y: GridFunction) -> None:
    if y.domain != problem.grid:
        raise DomainError(f"y lives on {y.domain}, problem grid is {problem.grid}")


def _terms(problem: ActionProblem, y: GridFunction):
    """``(t, y(t-1), D y(t))`` for every term of the action."""
    d = discrete.cfc_left(y, problem.order)
    return [(t, y(t - 1), d(t)) for t in d.domain]


def action(problem: ActionProblem, y: GridFunction):
    """``sum_{t=p+1}^{q} L(t, y(t-1), Dc y(t))``."""
    _check_aligned(problem, y)
    L = problem.lagrangian.L
    return sum(L(t, yr, d) for t, yr, d in _terms(problem, y))


def _partials(problem: ActionProblem, y: GridFunction):
    lag = problem.lagrangian
    terms = _terms(problem, y)
    dom = GridDomain(problem.grid.a + 1, problem.grid.b)
    L1 = GridFunction(dom, tuple(lag.L1(*x) for x in terms))
    L2 = GridFunction(dom, tuple(lag.L2(*x) for x in terms))
    return L1, L2


def el_residual(problem: ActionProblem, y: GridFunction) -> GridFunction:
    """``L1(j+1) + R[L2](j)`` on the interior nodes ``{p+1..q-1}``.

    ``R`` is the right Riemann difference ended at ``q + 1``.  For fixed
    boundary values this is exactly ``dJ/dy(j)``.
    """
    _check_aligned(problem, y)
    L1, L2 = _partials(problem, y)
    q = problem.grid.b
    adj = discrete.cfr_right(L2, problem.order, b=q + 1)
    return GridFunction.from_callable(
        GridDomain(problem.grid.a + 1, q - 1), lambda j: L1(j + 1) + adj(j)
    )


def first_variation(problem: ActionProblem, y: GridFunction) -> GridFunction:
    """``dJ/dy(j)`` at every grid node, boundary nodes included."""
    _check_aligned(problem, y)
    L1, L2 = _partials(problem, y)
    p, q = problem.grid.a, problem.grid.b
    order = problem.order
    adj = discrete.cfr_right(L2, order, b=q + 1)
    k = order.decay
    base_term = -order.b_norm * sum(L2(s) * k ** (s - p - 1) for s in range(p + 1, q + 1))
    values = [L1(p + 1) + base_term]
    values += [L1(j + 1) + adj(j) for j in range(p + 1, q)]
    values.append(adj(q))
    return GridFunction.on(p, q, values)


def natural_bc_residual(problem: ActionProblem, y: GridFunction):
    """Boundary expression ``B/(1-alpha) [E_R L2(t)]_{t=p+1}^{q+1}``.

    ``E_R`` is :func:`boundary_exp_right_d` ended at ``q + 1``, so the upper
    end contributes nothing.
    """
    _check_aligned(problem, y)
    order = problem.order
    if order.alpha == 1:
        raise OrderError("the natural boundary term divides by 1 - alpha")
    _, L2 = _partials(problem, y)
    p, q = problem.grid.a, problem.grid.b
    lam = order.lam
    top = boundary_exp_right_d(L2, lam, q + 1, b=q + 1)
    bottom = boundary_exp_right_d(L2, lam, p + 1, b=q + 1)
    return order.b_norm / (1 - order.alpha) * (top - bottom)


# -- solver ------------------------------------------------------------------------

@dataclass(frozen=True)
class SolverConfig:
    tol: float = 1e-10
    max_iter: int = 100
    fd_step: float = 1e-6
    initial: str = "linear"
    max_halvings: int = 40


def caputo_matrix(problem: ActionProblem) -> np.ndarray:
    """Rows ``t = p+1..q``, columns ``j = p..q``: the left Caputo difference in float."""
    p, q = problem.grid.a, problem.grid.b
    B = float(problem.order.b_norm)
    k = float(problem.order.decay)
    n = q - p + 1
    D = np.zeros((n - 1, n))
    for i, t in enumerate(range(p + 1, q + 1)):
        for j in range(p + 1, t + 1):
            D[i, j - p] += B * k ** (t - j)
        for j in range(p, t):
            D[i, j - p] -= B * k ** (t - j - 1)
    return D


def _float_grid(problem: ActionProblem, values) -> GridFunction:
    return GridFunction(problem.grid, tuple(float(v) for v in values))


def _unknowns(problem: ActionProblem) -> np.ndarray:
    n = len(problem.grid)
    if isinstance(problem.bc, FixedBC):
        return np.arange(1, n - 1)
    return np.arange(n)


def _gradient(problem: ActionProblem, y: np.ndarray, idx: np.ndarray) -> np.ndarray:
    fv = first_variation(problem, _float_grid(problem, y))
    return np.asarray(fv.values, dtype=float)[idx]


def _hessian(problem: ActionProblem, y: np.ndarray, idx: np.ndarray, cfg: SolverConfig) -> np.ndarray:
    lag = problem.lagrangian
    if lag.has_hessian:
        D = caputo_matrix(problem)
        n = len(y)
        P = np.zeros((n - 1, n))
        P[np.arange(n - 1), np.arange(n - 1)] = 1.0
        terms = _terms(problem, _float_grid(problem, y))
        a11 = np.array([float(lag.L11(*x)) for x in terms])
        a12 = np.array([float(lag.L12(*x)) for x in terms])
        a22 = np.array([float(lag.L22(*x)) for x in terms])
        H = (D.T * a22) @ D + (P.T * a11) @ P + (P.T * a12) @ D + (D.T * a12) @ P
        return H[np.ix_(idx, idx)]
    h = cfg.fd_step
    H = np.empty((len(idx), len(idx)))
    for c, j in enumerate(idx):
        up = y.copy()
        dn = y.copy()
        up[j] += h
        dn[j] -= h
        H[:, c] = (_gradient(problem, up, idx) - _gradient(problem, dn, idx)) / (2 * h)
    return 0.5 * (H + H.T)


def _initial_guess(problem: ActionProblem, cfg: SolverConfig) -> np.ndarray:
    n = len(problem.grid)
    if isinstance(problem.bc, FixedBC):
        A, B = float(problem.bc.A), float(problem.bc.B)
        if cfg.initial == "linear":
            y = np.linspace(A, B, n)
        elif cfg.initial == "zeros":
            y = np.zeros(n)
        else:
            raise ValueError(f"unknown initial guess {cfg.initial!r}")
        y[0], y[-1] = A, B
        return y
    return np.zeros(n)


def solve_el(problem: ActionProblem, cfg: SolverConfig = SolverConfig()) -> ELSolution:
    """Find a stationary point of the action by damped Newton on its gradient.

    With fixed boundary values the unknowns are the interior values; with
    natural conditions every value is free.  The step length is halved until
    the squared gradient norm decreases.  Raises :class:`ConvergenceError`
    (carrying the best iterate) when ``cfg.max_iter`` is exhausted.
    """
    idx = _unknowns(problem)
    y = _initial_guess(problem, cfg)
    grad = _gradient(problem, y, idx)
    norm = float(np.max(np.abs(grad)))
    it = 0
    while norm > cfg.tol and it < cfg.max_iter:
        it += 1
        H = _hessian(problem, y, idx, cfg)
        step = np.linalg.lstsq(H, -grad, rcond=None)[0]
        merit = float(grad @ grad)
        scale = 1.0
        for _ in range(cfg.max_halvings):
            trial = y.copy()
            trial[idx] += scale * step
            tgrad = _gradient(problem, trial, idx)
            if float(tgrad @ tgrad) < merit:
                break
            scale *= 0.5
        else:
            break
        y, grad = trial, tgrad
        norm = float(np.max(np.abs(grad)))
    yf = _float_grid(problem, y)
    sol = ELSolution(yf, norm, float(action(problem, yf)), it, norm <= cfg.tol)
    if not sol.converged:
        raise ConvergenceError(
            f"gradient norm {norm:.3e} above {cfg.tol:.1e} after {it} iterations", sol
        )
    return sol


def residual_norm(problem: ActionProblem, y: GridFunction) -> float:
    """Max-norm of the stationarity conditions for the problem's BC type."""
    if isinstance(problem.bc, FixedBC):
        r = el_residual(problem, y)
    else:
        r = first_variation(problem, y)
    return max(abs(float(v)) for v in r.values)


def linear_interpolant(problem: ActionProblem) -> np.ndarray:
    if not isinstance(problem.bc, FixedBC):
        raise ValueError("linear interpolant needs fixed boundary values")
    return np.linspace(float(problem.bc.A), float(problem.bc.B), len(problem.grid))


__all__ = [
    "ActionProblem",
    "DiscreteLagrangian",
    "ELSolution",
    "FixedBC",
    "NaturalBC",
    "Potential",
    "SolverConfig",
    "action",
    "boundary_exp_left_d",
    "boundary_exp_right_d",
    "by_parts_caputo_d_check",
    "caputo_matrix",
    "cos_well_potential",
    "el_residual",
    "exp_int_left_d",
    "exp_int_right_d",
    "first_variation",
    "harmonic_potential",
    "kinetic_lagrangian",
    "linear_interpolant",
    "natural_bc_residual",
    "residual_norm",
    "solve_el",
    "zero_potential",
]
