"""Find the index convention that makes Caputo summation by parts exact.

Every quantity is built directly from its defining sum in sympy, with a
symbolic order ``alpha`` and symbolic samples of ``f`` and ``g``, so nothing
from the package is used.  For each candidate convention the script prints
whether ``lhs - rhs`` simplifies to zero.

Candidates on the grid ``{p..q}`` (left Caputo based at ``p``):

* where the right Riemann difference ends (``q`` or ``q + 1``);
* the kernel exponent in the boundary operator ``E g(t) = sum_{s=t}^{e-1} w(s, t) g(s)``:
  anchored at the end (``k^(e-s)``), fixed (``k^(e-t)``), or anchored at the
  evaluation point (``k^(s+1-t)``);
* whether the boundary bracket multiplies by ``f(t)`` or ``f(t - 1)``.

The mirrored right-hand identity and the continuous analogue are checked at
the end.

Run: ``python scripts/derive_caputo_by_parts.py``
"""

from __future__ import annotations

import itertools

import sympy as sp

alpha = sp.Symbol("alpha", positive=True)
k = 1 - alpha
SCALE = 1 / (1 - alpha)


def samples(name, lo, hi):
    return {t: sp.Symbol(f"{name}{t}") for t in range(lo, hi + 1)}


def caputo_left(f, p, t):
    return sum(((f[s] - f[s - 1]) * k ** (t - s) for s in range(p + 1, t + 1)), sp.Integer(0))


def caputo_right(f, q, t):
    return sum(((f[s] - f[s + 1]) * k ** (s - t) for s in range(t, q)), sp.Integer(0))


def riemann_right(g, end, t):
    def h(u):
        return sum((g[s] * k ** (s - u) for s in range(u, end)), sp.Integer(0))

    return h(t) - h(t + 1)


def riemann_left(g, base, t):
    def h(u):
        return sum((g[s] * k ** (u - s) for s in range(base + 1, u + 1)), sp.Integer(0))

    return h(t) - h(t - 1)


KERNELS_RIGHT = {
    "k^(end-s)": lambda s, t, end: k ** (end - s),
    "k^(end-t)": lambda s, t, end: k ** (end - t),
    "k^(s+1-t)": lambda s, t, end: k ** (s + 1 - t),
}

KERNELS_LEFT = {
    "k^(s-base)": lambda s, t, base: k ** (s - base),
    "k^(t-base)": lambda s, t, base: k ** (t - base),
    "k^(t+1-s)": lambda s, t, base: k ** (t + 1 - s),
}


def is_zero(expr) -> bool:
    return sp.simplify(sp.together(sp.expand(expr))) == 0


def left_identity(p, q):
    f, g = samples("f", p - 1, q + 1), samples("g", p - 1, q + 1)
    lhs = sum(caputo_left(f, p, t) * g[t] for t in range(p + 1, q + 1))
    results = []
    for end, (kname, w), shift in itertools.product((q, q + 1), KERNELS_RIGHT.items(), (0, 1)):
        body = sum(f[t] * riemann_right(g, end, t) for t in range(p + 1, min(q, end - 1) + 1))

        def E(t):
            return sum((w(s, t, end) * g[s] for s in range(t, end)), sp.Integer(0))

        bracket = f[end - shift] * E(end) - f[p + 1 - shift] * E(p + 1)
        ok = is_zero(lhs - body - SCALE * bracket)
        results.append((f"end={'q+1' if end == q + 1 else 'q'}", kname, "f(t-1)" if shift else "f(t)", ok))
    return results


def right_identity(p, q):
    f, g = samples("f", p - 1, q + 1), samples("g", p - 1, q + 1)
    lhs = sum(caputo_right(f, q, t) * g[t] for t in range(p, q))
    results = []
    for base, (kname, w), shift in itertools.product((p, p - 1), KERNELS_LEFT.items(), (0, 1)):
        body = sum(f[t] * riemann_left(g, base, t) for t in range(max(p, base + 1), q))

        def E(t):
            return sum((w(s, t, base) * g[s] for s in range(base + 1, t + 1)), sp.Integer(0))

        bracket = f[q - 1 + shift] * E(q - 1) - f[base + shift] * E(base)
        ok = is_zero(lhs - body + SCALE * bracket)
        results.append((f"base={'p-1' if base == p - 1 else 'p'}", kname, "f(t+1)" if shift else "f(t)", ok))
    return results


def continuous_identity():
    """Caputo by parts on [0, 1] at alpha = 1/2 with polynomial f, g."""
    x, t = sp.symbols("x t", real=True)
    a, b = sp.Integer(0), sp.Integer(1)
    al = sp.Rational(1, 2)
    lam = -al / (1 - al)
    scale = 1 / (1 - al)
    f = 1 + 2 * x - x**3
    g = 3 - x + 2 * x**2  # not symmetric about 1/2, so the two kernels differ
    cap = scale * sp.integrate(sp.diff(f, x).subs(x, t) * sp.exp(lam * (x - t)), (t, a, x))
    rie_right = scale * sp.diff(sp.integrate(g.subs(x, t) * sp.exp(lam * (t - x)), (t, x, b)), x) * -1
    lhs = sp.integrate(cap * g, (x, a, b))
    body = sp.integrate(f * rie_right, (x, a, b))
    anchored = lambda y: sp.integrate(sp.exp(lam * (t - y)) * g.subs(x, t), (t, y, b))
    end_anchored = lambda y: sp.integrate(sp.exp(lam * (b - t)) * g.subs(x, t), (t, y, b))
    out = {}
    for name, E in (("anchored at x: e^{lam(t-x)}", anchored), ("anchored at b: e^{lam(b-t)}", end_anchored)):
        rhs = body + scale * (f.subs(x, b) * E(b) - f.subs(x, a) * E(a))
        out[name] = sp.N(lhs - rhs, 20)
    return out


def main():
    for p, q in ((0, 3), (0, 4)):
        print(f"left Caputo by parts on {{{p}..{q}}}")
        for end, kname, fac, ok in left_identity(p, q):
            print(f"  {end:6s} {kname:10s} {fac:7s} {'EXACT' if ok else '-'}")
        print(f"right Caputo by parts on {{{p}..{q}}}")
        for base, kname, fac, ok in right_identity(p, q):
            print(f"  {base:7s} {kname:11s} {fac:7s} {'EXACT' if ok else '-'}")
    print("continuous left Caputo by parts, lhs - rhs:")
    for name, gap in continuous_identity().items():
        print(f"  {name:30s} {gap}")


if __name__ == "__main__":
    main()
