"""Identity suite run by ``cffrac verify``.

Each entry checks one identity over many inputs and records the first
failing input as a witness.  Discrete and transform entries compare exact
rationals with ``==``; continuous and variational entries use tolerances.
"""

from __future__ import annotations

import math
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from . import continuous as C
from . import discrete as D
from . import transform as T
from . import varcalc as V
from .grid import GridDomain, GridFunction, Order, format_scalar, nabla_diff, delta_diff, q_reflect


@dataclass
class Tolerances:
    quadrature: float = 1e-10
    continuous: float = 1e-8
    closed_form: float = 1e-10
    by_parts_c: float = 1e-6
    el_residual: float = 1e-8
    linear_limit: float = 1e-12
    dense_oracle: float = 1e-10
    gradient_rel: float = 1e-5


@dataclass
class SuiteContext:
    orders: list
    max_span: int = 12
    min_span: int = 3
    samples: int = 10
    seed: int = 0
    tolerances: Tolerances = field(default_factory=Tolerances)

    def rng(self, name: str) -> random.Random:
        # one stream per entry so selecting a subset of entries does not shift the others
        return random.Random(f"{self.seed}:{name}")


@dataclass
class Entry:
    name: str
    statement: str
    mode: str
    status: str = "pass"
    cases: int = 0
    witness: Optional[dict] = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"


@dataclass
class VerificationReport:
    seed: int
    entries: list

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def to_dict(self) -> dict:
        return {"passed": self.passed, "seed": self.seed, "entries": [asdict(e) for e in self.entries]}

    def table(self) -> str:
        width = max(len(e.name) for e in self.entries)
        lines = [f"{'identity':<{width}}  mode       status  cases"]
        for e in self.entries:
            lines.append(f"{e.name:<{width}}  {e.mode:<9}  {e.status:<6}  {e.cases}")
            if e.witness:
                lines.append(f"{'':<{width}}  witness: {e.witness}")
        lines.append("ALL PASS" if self.passed else "FAILURES")
        return "\n".join(lines)


def random_rational(rng: random.Random, bound: int = 1000) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_grid_function(rng: random.Random, a: int, b: int) -> GridFunction:
    return GridFunction.on(a, b, (random_rational(rng) for _ in range(b - a + 1)))


def _fmt(values) -> list:
    return [format_scalar(v) for v in values]


class _Recorder:
    def __init__(self, entry: Entry):
        self.entry = entry

    def check(self, ok: bool, **witness) -> bool:
        self.entry.cases += 1
        if not ok and self.entry.witness is None:
            self.entry.status = "fail"
            self.entry.witness = {
                k: (_fmt(v.values) if isinstance(v, GridFunction) else
                    format_scalar(v) if isinstance(v, (Fraction, int, float)) else v)
                for k, v in witness.items()
            }
        return ok


# -- exact discrete entries -------------------------------------------------------

def _random_cases(ctx: SuiteContext, name: str, n_funcs: int = 1):
    rng = ctx.rng(name)
    for alpha in ctx.orders:
        order = Order(alpha)
        for span in range(ctx.min_span, ctx.max_span + 1):
            for _ in range(ctx.samples):
                funcs = [random_grid_function(rng, 0, span) for _ in range(n_funcs)]
                yield order, funcs


def _discrete_entry(name: str, statement: str, body: Callable, n_funcs: int = 1):
    def run(ctx: SuiteContext) -> Entry:
        entry = Entry(name, statement, "exact")
        rec = _Recorder(entry)
        for order, funcs in _random_cases(ctx, name, n_funcs):
            lhs, rhs = body(order, *funcs)
            if not rec.check(lhs == rhs, alpha=order.alpha, f=funcs[0], lhs=_side(lhs), rhs=_side(rhs)):
                break
        return entry

    run.entry_name = name
    run.needs_open_order = True
    return run


def _side(x):
    return _fmt(x.values) if isinstance(x, GridFunction) else x


def _q_riemann(order, f):
    return q_reflect(D.cfr_left(f, order), pivot=f.a + f.b), D.cfr_right(q_reflect(f), order)


def _q_caputo(order, f):
    return q_reflect(D.cfc_left(f, order), pivot=f.a + f.b), D.cfc_right(q_reflect(f), order)


def _q_sum(order, f):
    return q_reflect(D.cf_sum_left(f, order)), D.cf_sum_right(q_reflect(f), order)


def _sum_riemann_left(order, f):
    return D.cf_sum_left(D.cfr_left(f, order), order, a=f.a), f.restrict(f.a + 1)


def _riemann_sum_left(order, f):
    return D.cfr_left(D.cf_sum_left(f, order), order), f.restrict(f.a + 1)


def _sum_riemann_right(order, f):
    return D.cf_sum_right(D.cfr_right(f, order), order, b=f.b), f.restrict(f.a, f.b - 1)


def _riemann_sum_right(order, f):
    return D.cfr_right(D.cf_sum_right(f, order), order), f.restrict(f.a, f.b - 1)


def _sum_caputo_left(order, f):
    return D.cf_sum_left(D.cfc_left(f, order), order, a=f.a), (f - f(f.a)).restrict(f.a + 1)


def _sum_caputo_right(order, f):
    return D.cf_sum_right(D.cfc_right(f, order), order, b=f.b), (f - f(f.b)).restrict(f.a, f.b - 1)


def _cr_left(order, f):
    return D.cfc_left(f, order), D.cfr_left(f, order) - D.caputo_riemann_gap(f, order, "left")


def _cr_right(order, f):
    return D.cfc_right(f, order), D.cfr_right(f, order) - D.caputo_riemann_gap(f, order, "right")


def _bp_sum(order, f, g):
    return D.by_parts_sum_check(f, g, order)


def _bp_riemann(order, f, g):
    return D.by_parts_riemann_check(f, g, order)


def _bp_caputo_left(order, f, g):
    return V.by_parts_caputo_d_check(f, g, order, "left")


def _bp_caputo_right(order, f, g):
    return V.by_parts_caputo_d_check(f, g, order, "right")


def limiting_cases(ctx: SuiteContext) -> Entry:
    entry = Entry(
        "limiting_cases",
        "alpha=0: Caputo -> f-f(a), f-f(b); Riemann -> f. alpha=1: Caputo -> nabla f, -delta f; "
        "Riemann -> nabla f, -delta f away from the first interior point",
        "exact",
    )
    rec = _Recorder(entry)
    rng = ctx.rng("limiting_cases")
    zero, one = Order(0), Order(1)
    for span in range(ctx.min_span, ctx.max_span + 1):
        for _ in range(ctx.samples):
            f = random_grid_function(rng, 0, span)
            a, b = f.a, f.b
            nab = nabla_diff(f)
            mdel = -delta_diff(f)
            pairs = [
                ("cfc_left@0", D.cfc_left(f, zero), (f - f(a)).restrict(a + 1)),
                ("cfc_right@0", D.cfc_right(f, zero), (f - f(b)).restrict(a, b - 1)),
                ("cfr_left@0", D.cfr_left(f, zero), f.restrict(a + 1)),
                ("cfr_right@0", D.cfr_right(f, zero), f.restrict(a, b - 1)),
                ("cfc_left@1", D.cfc_left(f, one), nab),
                ("cfc_right@1", D.cfc_right(f, one), mdel),
                ("cfr_left@1", D.cfr_left(f, one).restrict(a + 2), nab.restrict(a + 2)),
                ("cfr_right@1", D.cfr_right(f, one).restrict(a, b - 2), mdel.restrict(a, b - 2)),
            ]
            for label, lhs, rhs in pairs:
                if not rec.check(lhs == rhs, case=label, f=f, lhs=_side(lhs), rhs=_side(rhs)):
                    return entry
    return entry


limiting_cases.entry_name = "limiting_cases"
limiting_cases.needs_open_order = False


# -- transform entries --------------------------------------------------------------

TRANSFORM_Z = (Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(3, 4))


def _finite_signal(rng, base, max_len=8):
    return T.FiniteSignal(base, [random_rational(rng) for _ in range(rng.randint(1, max_len))])


def transform_identities(ctx: SuiteContext) -> Entry:
    entry = Entry(
        "transform_identities",
        "N_a(f*g) = N_a f N g; N_a(nabla f) = z N_a f - (1-z)^a f(a); N{1} = 1/z; N{e_lam} = 1/(z-lam)",
        "exact",
    )
    rec = _Recorder(entry)
    rng = ctx.rng("transform_identities")
    for z in TRANSFORM_Z:
        if not rec.check(T.laplace(T.GeometricSignal(1, 1, 0), z) == 1 / z, case="constant", z=z):
            return entry
        for lam in (Fraction(-1), Fraction(-1, 2)):
            if abs((1 - z) / (1 - lam)) < 1:
                val = T.laplace(T.nabla_exponential_signal(lam), z)
                if not rec.check(val == 1 / (z - lam), case="exponential", z=z, lam=lam):
                    return entry
        for base in (-2, 0, 3):
            for _ in range(ctx.samples):
                f, g = _finite_signal(rng, base), _finite_signal(rng, base)
                lhs, rhs = T.convolution_theorem_check(f, g, z)
                if not rec.check(lhs == rhs, case="convolution", z=z, f=_fmt(f.values), g=_fmt(g.values)):
                    return entry
                lhs, rhs = T.nabla_shift_check(f, z)
                if not rec.check(lhs == rhs, case="shift", z=z, base=base, f=_fmt(f.values)):
                    return entry
    return entry


transform_identities.entry_name = "transform_identities"
transform_identities.needs_open_order = False


def riemann_transform(ctx: SuiteContext) -> Entry:
    entry = Entry("riemann_transform", "N_a(cfr_left f)(z) = B/(1-alpha) z F(z)/(z-lam)", "exact")
    rec = _Recorder(entry)
    rng = ctx.rng("riemann_transform")
    for alpha in ctx.orders:
        order = Order(alpha)
        for z in TRANSFORM_Z:
            if abs((1 - z) * order.decay) >= 1:
                continue
            for _ in range(ctx.samples):
                f = _finite_signal(rng, 0, 6)
                lhs, rhs = T.riemann_transform_check(f, order, z)
                if not rec.check(lhs == rhs, alpha=alpha, z=z, f=_fmt(f.values), lhs=lhs, rhs=rhs):
                    return entry
    return entry


riemann_transform.entry_name = "riemann_transform"
riemann_transform.needs_open_order = True


# -- continuous entries -------------------------------------------------------------

CONTINUOUS_ORDERS = (Fraction(1, 3), Fraction(1, 2), Fraction(2, 3))
CONTINUOUS_POINTS = (0.25, 0.5, 1.0)


def continuous_identities(ctx: SuiteContext) -> Entry:
    tol = ctx.tolerances
    q = C.QuadratureConfig(abs_tol=tol.quadrature)
    entry = Entry(
        "continuous_identities",
        "reflection dualities, Caputo/Riemann relation, inversions and Caputo inversion on [0, 1]",
        "tolerance",
    )
    rec = _Recorder(entry)
    a, b = 0.0, 1.0
    for alpha in CONTINUOUS_ORDERS:
        order = Order(alpha)
        lam = float(order.lam)
        scale = 1.0 / (1.0 - float(alpha))
        for f in C.battery():
            Qf = f.reflect(a, b)
            for x in CONTINUOUS_POINTS:
                checks = {
                    "reflect_caputo": (C.cfc_left_c(Qf, order, a, a + b - x, q), C.cfc_right_c(f, order, x, b, q)),
                    "reflect_riemann": (C.cfr_left_c(Qf, order, a, a + b - x, q), C.cfr_right_c(f, order, x, b, q)),
                    "reflect_integral": (C.cf_int_left_c(Qf, order, a, a + b - x, q), C.cf_int_right_c(f, order, x, b, q)),
                    "cr_left": (C.cfc_left_c(f, order, a, x, q),
                                C.cfr_left_c(f, order, a, x, q) - scale * f(a) * math.exp(lam * (x - a))),
                    "cr_right": (C.cfc_right_c(f, order, x, b, q),
                                 C.cfr_right_c(f, order, x, b, q) - scale * f(b) * math.exp(lam * (b - x))),
                    "int_after_riemann_left": (
                        C.cf_int_left_c(lambda s: C.cfr_left_c(f, order, a, s, q), order, a, x, q), f(x)),
                    "riemann_after_int_left": (
                        C.cfr_left_c(lambda s: C.cf_int_left_c(f, order, a, s, q), order, a, x, q), f(x)),
                    "int_after_riemann_right": (
                        C.cf_int_right_c(lambda s: C.cfr_right_c(f, order, s, b, q), order, x, b, q), f(x)),
                    "riemann_after_int_right": (
                        C.cfr_right_c(lambda s: C.cf_int_right_c(f, order, s, b, q), order, x, b, q), f(x)),
                    "caputo_inversion_left": C.caputo_inversion_check_c(f, order, a, x, q, "left"),
                    "caputo_inversion_right": C.caputo_inversion_check_c(f, order, b, x, q, "right"),
                }
                for label, (lhs, rhs) in checks.items():
                    if not rec.check(abs(lhs - rhs) <= tol.continuous, case=label, f=f.label,
                                     alpha=alpha, x=x, lhs=lhs, rhs=rhs):
                        return entry
    exact = 2.0 * (1.0 - math.exp(-1.0))
    value = C.cfc_left_c(C.SmoothFunction(lambda t: t, lambda t: 1.0, "t"), Order(Fraction(1, 2)), 0.0, 1.0, q)
    rec.check(abs(value - exact) <= tol.closed_form, case="closed_form_linear", lhs=value, rhs=exact)
    return entry


continuous_identities.entry_name = "continuous_identities"
continuous_identities.needs_open_order = False


def continuous_by_parts(ctx: SuiteContext) -> Entry:
    tol = ctx.tolerances
    q = C.QuadratureConfig(abs_tol=tol.quadrature)
    entry = Entry("continuous_by_parts", "integration by parts (integral, Riemann, both Caputo forms)", "tolerance")
    rec = _Recorder(entry)
    rng = ctx.rng("continuous_by_parts")
    interval = C.Interval(0.0, 1.0)
    for alpha in CONTINUOUS_ORDERS:
        order = Order(alpha)
        for _ in range(2):
            f = C.polynomial([rng.uniform(-1, 1) for _ in range(4)])
            g = C.polynomial([rng.uniform(-1, 1) for _ in range(4)])
            for kind in C.BY_PARTS_KINDS:
                lhs, rhs = C.by_parts_c_check(f, g, order, interval, q, kind)
                if not rec.check(abs(lhs - rhs) <= tol.by_parts_c, case=kind, alpha=alpha,
                                 f=f.label, g=g.label, lhs=lhs, rhs=rhs):
                    return entry
    return entry


continuous_by_parts.entry_name = "continuous_by_parts"
continuous_by_parts.needs_open_order = False


# -- variational entries ------------------------------------------------------------

def variational(ctx: SuiteContext) -> Entry:
    tol = ctx.tolerances
    entry = Entry(
        "variational",
        "EL solver: alpha=1 linear limit, stationarity, gradient = first variation",
        "tolerance",
    )
    rec = _Recorder(entry)
    rng = ctx.rng("variational")
    grid = GridDomain(-1, 7)
    lin = V.ActionProblem(V.kinetic_lagrangian(V.zero_potential()), grid, Order(1), V.FixedBC(0, 8))
    sol = V.solve_el(lin, V.SolverConfig(initial="zeros"))
    dev = float(np.max(np.abs(np.asarray(sol.y.values) - V.linear_interpolant(lin))))
    if not rec.check(dev <= tol.linear_limit, case="linear_limit", deviation=dev):
        return entry
    for alpha in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
        for pot in (V.zero_potential(), V.harmonic_potential(Fraction(1, 4)), V.cos_well_potential(-1)):
            prob = V.ActionProblem(V.kinetic_lagrangian(pot), grid, Order(alpha), V.FixedBC(0, 2))
            sol = V.solve_el(prob)
            if not rec.check(sol.residual_norm <= tol.el_residual, case="stationarity",
                             alpha=alpha, potential=pot.label, residual=sol.residual_norm):
                return entry
            y = GridFunction(grid, tuple(rng.uniform(-1, 1) for _ in grid))
            fv = V.first_variation(prob, y)
            err = gradient_mismatch(prob, y, fv)
            if not rec.check(err <= tol.gradient_rel, case="gradient", alpha=alpha,
                             potential=pot.label, rel_error=err):
                return entry
    return entry


variational.entry_name = "variational"
variational.needs_open_order = False


def gradient_mismatch(problem: V.ActionProblem, y: GridFunction, fv: GridFunction, h: float = 1e-6) -> float:
    """Largest relative gap between central differences of the action and ``fv``."""
    worst = 0.0
    base = list(y.values)
    for i, j in enumerate(y.domain):
        up = base.copy()
        dn = base.copy()
        up[i] += h
        dn[i] -= h
        fd = (V.action(problem, GridFunction(y.domain, tuple(up)))
              - V.action(problem, GridFunction(y.domain, tuple(dn)))) / (2 * h)
        worst = max(worst, abs(fd - fv(j)) / max(1.0, abs(fd)))
    return worst


ENTRIES = [
    _discrete_entry("q_duality_riemann", "Q cfr_left f = cfr_right Q f", _q_riemann),
    _discrete_entry("q_duality_caputo", "Q cfc_left f = cfc_right Q f", _q_caputo),
    _discrete_entry("q_duality_sum", "Q sum_left u = sum_right Q u", _q_sum),
    _discrete_entry("sum_after_riemann_left", "sum_left cfr_left f = f", _sum_riemann_left),
    _discrete_entry("riemann_after_sum_left", "cfr_left sum_left f = f", _riemann_sum_left),
    _discrete_entry("sum_after_riemann_right", "sum_right cfr_right f = f", _sum_riemann_right),
    _discrete_entry("riemann_after_sum_right", "cfr_right sum_right f = f", _riemann_sum_right),
    _discrete_entry("sum_after_caputo_left", "sum_left cfc_left f = f - f(a)", _sum_caputo_left),
    _discrete_entry("sum_after_caputo_right", "sum_right cfc_right f = f - f(b)", _sum_caputo_right),
    _discrete_entry("caputo_riemann_left", "cfc_left = cfr_left - B/(1-alpha) f(a) (1-alpha)^(t-a)", _cr_left),
    _discrete_entry("caputo_riemann_right", "cfc_right = cfr_right - B/(1-alpha) f(b) (1-alpha)^(b-t)", _cr_right),
    _discrete_entry("by_parts_sum", "sum phi sum_left psi = sum psi sum_right phi", _bp_sum, 2),
    _discrete_entry("by_parts_riemann", "sum f cfr_left g = sum cfr_right f g", _bp_riemann, 2),
    _discrete_entry("by_parts_caputo_left", "sum cfc_left f g = sum f cfr_right g + boundary", _bp_caputo_left, 2),
    _discrete_entry("by_parts_caputo_right", "sum cfc_right f g = sum f cfr_left g - boundary", _bp_caputo_right, 2),
    limiting_cases,
    transform_identities,
    riemann_transform,
    continuous_identities,
    continuous_by_parts,
    variational,
]

ENTRY_NAMES = [e.entry_name for e in ENTRIES]


def run_suite(ctx: SuiteContext, names: Optional[list] = None) -> VerificationReport:
    selected = [e for e in ENTRIES if names is None or e.entry_name in names]
    return VerificationReport(ctx.seed, [run(ctx) for run in selected])
