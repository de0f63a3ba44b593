"""``cffrac`` command line tool.

Subcommands::

    cffrac verify  [--config PATH] [--report PATH]
    cffrac table   --config PATH [--out DIR]
    cffrac laplace --config PATH [--out DIR]
    cffrac el      --config PATH [--out DIR]

Exit codes: 0 ok, 1 identity failure, 2 config error, 3 solver
non-convergence.  ``CFFRAC_SEED`` overrides the seed of randomized checks.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import discrete as D
from . import suite
from . import transform as T
from . import varcalc as V
from ._accel import BACKEND
from .config import SUM_OPERATORS, ExperimentConfig, load_config
from .errors import ConfigError, ConvergenceError, TransformError
from .grid import GridFunction, Order, format_scalar

EXIT_OK = 0
EXIT_IDENTITY = 1
EXIT_CONFIG = 2
EXIT_CONVERGENCE = 3

DEFAULT_OUT = "cffrac_out"


def decimal(x) -> str:
    """17 significant digits, enough to round-trip a double."""
    return format(float(x), ".17g")


def _alpha_tag(alpha: Fraction) -> str:
    return f"{alpha.numerator}-{alpha.denominator}"


def _out_dir(cfg: ExperimentConfig, override: Optional[str]) -> Path:
    out = Path(override or cfg.output or DEFAULT_OUT)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write_csv(path: Path, header: list, rows: list) -> None:
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


# -- verify ---------------------------------------------------------------------------

def cmd_verify(args) -> int:
    cfg = load_config(args.config)
    names = cfg.identities
    if names is not None:
        unknown = sorted(set(names) - set(suite.ENTRY_NAMES))
        if unknown:
            raise ConfigError(f"unknown identities {unknown}; available: {suite.ENTRY_NAMES}")
    selected = [e for e in suite.ENTRIES if names is None or e.entry_name in names]
    orders = cfg.order_values()
    closed = [o for o in orders if o in (0, 1)]
    needs_open = [e.entry_name for e in selected if e.needs_open_order]
    if closed and needs_open:
        raise ConfigError(
            f"orders {[format_scalar(o) for o in closed]} are not in (0, 1) but "
            f"{needs_open[0]} needs fractional sums or divides by 1 - alpha"
        )
    ctx = suite.SuiteContext(
        orders=orders,
        max_span=cfg.max_span,
        samples=cfg.samples,
        seed=cfg.resolved_seed(),
        tolerances=suite.Tolerances(**cfg.tolerances.model_dump()),
    )
    report = suite.run_suite(ctx, names)
    print(report.table())
    target = args.report or cfg.output
    if target:
        Path(target).write_text(json.dumps(report.to_dict(), indent=2) + "\n")
    return EXIT_OK if report.passed else EXIT_IDENTITY


# -- table ----------------------------------------------------------------------------

def _operator_values(f: GridFunction, order: Order, name: str) -> GridFunction:
    if name == "cfc_left":
        return D.cfc_left(f, order)
    if name == "cfr_left":
        return D.cfr_left(f, order)
    if name == "cfc_right":
        return D.cfc_right(f, order)
    if name == "cfr_right":
        return D.cfr_right(f, order)
    if name == "sum_left":
        return D.cf_sum_left(f, order)
    return D.cf_sum_right(f, order)


def cmd_table(args) -> int:
    cfg = load_config(args.config)
    if not cfg.functions:
        raise ConfigError("table needs at least one entry in 'functions'")
    ops = list(cfg.operators)
    for alpha in cfg.order_values():
        if alpha in (0, 1) and set(ops) & set(SUM_OPERATORS):
            raise ConfigError(f"fractional sums need 0 < alpha < 1, got alpha = {format_scalar(alpha)}")
    out = _out_dir(cfg, args.out)
    header = ["function", "t", "f", "f_decimal"]
    for op in ops:
        header += [op, f"{op}_decimal"]
    for alpha in cfg.order_values():
        order = Order(alpha)
        rows = []
        for spec in cfg.functions:
            f = spec.on(cfg.grid)
            cols = {op: _operator_values(f, order, op) for op in ops}
            for t in f.domain:
                row = [spec.name, t, format_scalar(f(t)), decimal(f(t))]
                for op in ops:
                    g = cols[op]
                    row += [format_scalar(g(t)), decimal(g(t))] if t in g.domain else ["", ""]
                rows.append(row)
        path = out / f"table_alpha_{_alpha_tag(alpha)}.csv"
        _write_csv(path, header, rows)
        print(path)
    return EXIT_OK


# -- laplace ----------------------------------------------------------------------------

def _signal(spec, cfg: ExperimentConfig):
    """Constants and geometric sequences extend past the grid; other kinds are
    taken as their grid samples followed by zeros."""
    a = cfg.grid.a
    if spec.kind == "const":
        return T.GeometricSignal(spec.c, 1, a)
    if spec.kind == "geometric":
        return T.GeometricSignal(spec.c, spec.r, a)
    return T.FiniteSignal(a, spec.on(cfg.grid).values)


def _transform_row(name, alpha, z, compute):
    label = "" if alpha is None else format_scalar(alpha)
    try:
        v = compute()
    except TransformError as exc:
        status = "pole" if "pole" in str(exc) else "divergent"
        return [name, label, format_scalar(z), "", "", status]
    return [name, label, format_scalar(z), format_scalar(v), decimal(v), "ok"]


def cmd_laplace(args) -> int:
    cfg = load_config(args.config)
    if not cfg.functions or not cfg.z:
        raise ConfigError("laplace needs 'functions' and 'z'")
    out = _out_dir(cfg, args.out)
    rows = []
    for spec in cfg.functions:
        sig = _signal(spec, cfg)
        for z in cfg.z_values():
            rows.append(_transform_row(spec.name, None, z, lambda: T.laplace(sig, z)))
        if isinstance(sig, T.FiniteSignal):
            for alpha in cfg.order_values():
                if alpha in (0, 1):
                    continue
                order = Order(alpha)
                for z in cfg.z_values():
                    rows.append(_transform_row(
                        f"cfr_left[{spec.name}]", alpha, z,
                        lambda: T.laplace_of_discrete_operators(sig, order, z)))
    path = out / "laplace.csv"
    _write_csv(path, ["function", "alpha", "z", "value", "value_decimal", "status"], rows)
    print(path)
    return EXIT_OK


# -- el ---------------------------------------------------------------------------------

def _problem(cfg: ExperimentConfig, alpha: Fraction) -> V.ActionProblem:
    pot = cfg.el.potential
    if pot.kind == "zero":
        potential = V.zero_potential()
    elif pot.kind == "harmonic":
        potential = V.harmonic_potential(pot.k)
    else:
        potential = V.cos_well_potential(pot.k)
    bc = cfg.el.bc
    boundary = V.FixedBC(Fraction(bc.A), Fraction(bc.B)) if bc.kind == "fixed" else V.NaturalBC()
    try:
        return V.ActionProblem(V.kinetic_lagrangian(potential), cfg.grid.domain(), Order(alpha), boundary)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def cmd_el(args) -> int:
    cfg = load_config(args.config)
    problems = [(alpha, _problem(cfg, alpha)) for alpha in cfg.order_values()]
    out = _out_dir(cfg, args.out)
    solver = V.SolverConfig(tol=cfg.el.tol, max_iter=cfg.el.max_iter, initial=cfg.el.initial)
    rows, summary, status = [], [], EXIT_OK
    for alpha, prob in problems:
        try:
            sol = V.solve_el(prob, solver)
        except ConvergenceError as exc:
            sol = exc.solution
            status = EXIT_CONVERGENCE
        if isinstance(prob.bc, V.FixedBC):
            res = V.el_residual(prob, sol.y)
        else:
            res = V.first_variation(prob, sol.y)
        for t in prob.grid:
            r = decimal(res(t)) if t in res.domain else ""
            rows.append([format_scalar(alpha), t, decimal(sol.y(t)), r])
        summary.append({
            "alpha": format_scalar(alpha),
            "converged": sol.converged,
            "iterations": sol.iterations,
            "residual_norm": sol.residual_norm,
            "action": sol.action_value,
        })
    path = out / "el.csv"
    _write_csv(path, ["alpha", "t", "y", "residual"], rows)
    (out / "el_summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    print(path)
    if status != EXIT_OK:
        print("solver did not converge for at least one order", file=sys.stderr)
    return status


# -- entry point --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cffrac", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s (kernels: {BACKEND})")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the identity suite")
    p.add_argument("--config", help="JSON config (default: packaged config)")
    p.add_argument("--report", help="write the JSON report here")
    p.set_defaults(func=cmd_verify)

    for name, func, help_ in (
        ("table", cmd_table, "operator values on a grid, one CSV per order"),
        ("laplace", cmd_laplace, "exact nabla Laplace transforms"),
        ("el", cmd_el, "solve the discrete Euler-Lagrange problem"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--config", required=True, help="JSON config")
        p.add_argument("--out", help=f"output directory (default: config 'output' or {DEFAULT_OUT})")
        p.set_defaults(func=func)
    return parser


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
