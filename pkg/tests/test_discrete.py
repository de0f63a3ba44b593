from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import oracles
from cffrac import discrete as D
from cffrac.errors import DomainError, OrderError
from cffrac.grid import GridDomain, GridFunction, Order, delta_diff, nabla_diff, q_reflect

from conftest import grid_function_pairs, grid_functions, open_orders, rationals

HALF = Order(Fraction(1, 2))


def _as_dict(g):
    return dict(g.items())


@given(grid_functions(), open_orders)
def test_operators_match_brute_force(f, alpha):
    o = Order(alpha)
    fd = oracles.as_dict(f)
    a, b = f.a, f.b
    assert _as_dict(D.cfc_left(f, o)) == oracles.cfc_left(fd, a, b, alpha)
    assert _as_dict(D.cfc_right(f, o)) == oracles.cfc_right(fd, a, b, alpha)
    assert _as_dict(D.cfr_left(f, o)) == oracles.cfr_left(fd, a, b, alpha)
    assert _as_dict(D.cfr_right(f, o)) == oracles.cfr_right(fd, a, b, alpha)
    assert _as_dict(D.cf_sum_left(f, o)) == oracles.sum_left(fd, a, b, alpha)
    assert _as_dict(D.cf_sum_right(f, o)) == oracles.sum_right(fd, a, b, alpha)


@given(grid_functions(), open_orders)
def test_float_path_matches_exact(f, alpha):
    o = Order(alpha)
    ff = f.map(float)
    for op in (D.cfc_left, D.cfc_right, D.cfr_left, D.cfr_right):
        exact = op(f, o)
        approx = op(ff, o)
        assert exact.domain == approx.domain
        for x, y in zip(exact.values, approx.values):
            assert abs(float(x) - y) <= 1e-9 * max(1.0, abs(float(x)))


def test_output_grids():
    f = GridFunction.on(2, 7, range(6))
    assert D.cfc_left(f, HALF).domain == GridDomain(3, 7)
    assert D.cfr_left(f, HALF).domain == GridDomain(3, 7)
    assert D.cfc_right(f, HALF).domain == GridDomain(2, 6)
    assert D.cfr_right(f, HALF).domain == GridDomain(2, 6)
    assert D.cf_sum_left(f, HALF).domain == f.domain


@given(grid_function_pairs(min_len=2), open_orders, rationals, rationals)
def test_linearity(pair, alpha, c1, c2):
    f, g = pair
    o = Order(alpha)
    for op in (D.cfc_left, D.cfc_right, D.cfr_left, D.cfr_right, D.cf_sum_left, D.cf_sum_right):
        assert op(f * c1 + g * c2, o) == op(f, o) * c1 + op(g, o) * c2


@given(rationals, open_orders, st.integers(2, 9))
def test_constants(c, alpha, n):
    o = Order(alpha)
    f = GridFunction.on(0, n, [c] * (n + 1))
    k = 1 - alpha
    assert set(D.cfc_left(f, o).values) == {0}
    assert set(D.cfc_right(f, o).values) == {0}
    assert D.cfr_left(f, o).values == tuple(c * k ** (t - 1) for t in range(1, n + 1))
    assert D.cfr_right(f, o).values == tuple(c * k ** (n - 1 - t) for t in range(0, n))


def test_small_worked_example():
    # f = t on {0..2}, alpha = 1/2: g(1) = 1, g(2) = 2 + 1/2
    f = GridFunction.on(0, 2, [0, 1, 2])
    assert D.cfr_left(f, HALF).values == (1, Fraction(3, 2))
    assert D.cfc_left(f, HALF).values == (1, Fraction(3, 2))
    assert D.cf_sum_left(f, HALF).values == (0, 1, Fraction(5, 2))


@given(grid_functions(min_len=2), open_orders)
def test_riemann_and_sum_are_inverse(f, alpha):
    o = Order(alpha)
    a, b = f.a, f.b
    assert D.cf_sum_left(D.cfr_left(f, o), o, a=a) == f.restrict(a + 1)
    assert D.cfr_left(D.cf_sum_left(f, o), o) == f.restrict(a + 1)
    assert D.cf_sum_right(D.cfr_right(f, o), o, b=b) == f.restrict(a, b - 1)
    assert D.cfr_right(D.cf_sum_right(f, o), o) == f.restrict(a, b - 1)


@given(grid_functions(min_len=2), open_orders)
def test_sum_inverts_caputo_up_to_endpoint_value(f, alpha):
    o = Order(alpha)
    a, b = f.a, f.b
    assert D.cf_sum_left(D.cfc_left(f, o), o, a=a) == (f - f(a)).restrict(a + 1)
    assert D.cf_sum_right(D.cfc_right(f, o), o, b=b) == (f - f(b)).restrict(a, b - 1)


@given(grid_functions(min_len=2), open_orders)
def test_caputo_riemann_relation(f, alpha):
    o = Order(alpha)
    for side, cap, rie in (("left", D.cfc_left, D.cfr_left), ("right", D.cfc_right, D.cfr_right)):
        assert cap(f, o) == rie(f, o) - D.caputo_riemann_gap(f, o, side)


def test_caputo_riemann_gap_closed_form():
    f = GridFunction.on(0, 3, [2, 0, 0, 5])
    o = Order(Fraction(1, 3))
    assert D.caputo_riemann_gap(f, o, D.Side.LEFT).values == (2, Fraction(4, 3), Fraction(8, 9))
    assert D.caputo_riemann_gap(f, o, "right").values == (Fraction(20, 9), Fraction(10, 3), 5)
    with pytest.raises(OrderError):
        D.caputo_riemann_gap(f, Order(1))


@given(grid_functions(min_len=2), open_orders)
def test_q_dualities(f, alpha):
    o = Order(alpha)
    pivot = f.a + f.b
    Qf = q_reflect(f)
    assert q_reflect(D.cfr_left(f, o), pivot) == D.cfr_right(Qf, o)
    assert q_reflect(D.cfc_left(f, o), pivot) == D.cfc_right(Qf, o)
    assert q_reflect(D.cf_sum_left(f, o)) == D.cf_sum_right(Qf, o)
    assert q_reflect(D.cfr_right(f, o), pivot) == D.cfr_left(Qf, o)


@given(grid_function_pairs(), open_orders)
def test_riemann_by_parts(pair, alpha):
    lhs, rhs = D.by_parts_riemann_check(*pair, Order(alpha))
    assert lhs == rhs


@given(grid_function_pairs(), open_orders)
def test_sum_by_parts(pair, alpha):
    lhs, rhs = D.by_parts_sum_check(*pair, Order(alpha))
    assert lhs == rhs


def test_by_parts_needs_room():
    f = GridFunction.on(0, 2, [1, 2, 3])
    with pytest.raises(DomainError):
        D.by_parts_riemann_check(f, f, HALF)
    with pytest.raises(DomainError):
        D.by_parts_sum_check(f, GridFunction.on(1, 3, [1, 2, 3]), HALF)


@given(grid_functions(min_len=2))
def test_alpha_zero_limits(f):
    o = Order(0)
    a, b = f.a, f.b
    assert D.cfc_left(f, o) == (f - f(a)).restrict(a + 1)
    assert D.cfc_right(f, o) == (f - f(b)).restrict(a, b - 1)
    assert D.cfr_left(f, o) == f.restrict(a + 1)
    assert D.cfr_right(f, o) == f.restrict(a, b - 1)


@given(grid_functions(min_len=3))
def test_alpha_one_limits(f):
    o = Order(1)
    a, b = f.a, f.b
    assert D.cfc_left(f, o) == nabla_diff(f)
    assert D.cfc_right(f, o) == -delta_diff(f)
    # the Riemann differences never see f(a) (resp. f(b)), so the first point
    # is f(a+1) rather than f(a+1) - f(a)
    assert D.cfr_left(f, o).restrict(a + 2) == nabla_diff(f).restrict(a + 2)
    assert D.cfr_right(f, o).restrict(a, b - 2) == (-delta_diff(f)).restrict(a, b - 2)
    assert D.cfr_left(f, o)(a + 1) == f(a + 1)
    assert D.cfr_right(f, o)(b - 1) == f(b - 1)


@given(grid_functions(min_len=2))
def test_alpha_one_riemann_full_grid_when_endpoint_vanishes(f):
    g = f - f(f.a)
    assert D.cfr_left(g, Order(1)) == nabla_diff(g)


def test_sums_need_open_order():
    f = GridFunction.on(0, 3, [1, 2, 3, 4])
    for alpha in (0, 1):
        with pytest.raises(OrderError):
            D.cf_sum_left(f, Order(alpha))
        with pytest.raises(OrderError):
            D.cf_sum_right(f, Order(alpha))


def test_explicit_base_and_end():
    f = GridFunction.on(0, 5, [3, 1, 4, 1, 5, 9])
    tail = f.restrict(2)
    # a Riemann difference based at 1 only needs values from 2 on
    assert D.cfr_left(tail, HALF, a=1) == D.cfr_left(f.restrict(1), HALF)
    with pytest.raises(DomainError):
        D.cfc_left(tail, HALF, a=1)
    # the right Riemann difference may end one past the grid
    ext = D.cfr_right(f, HALF, b=6)
    assert ext.domain == GridDomain(0, 5)
    assert ext(5) == f(5)
    with pytest.raises(DomainError):
        D.cfr_right(f, HALF, b=7)


def test_normalization_scales_differences():
    f = GridFunction.on(0, 4, [1, -2, 3, 0, 5])
    o2 = Order(Fraction(1, 3), b_norm=2)
    o1 = Order(Fraction(1, 3))
    assert D.cfc_left(f, o2) == D.cfc_left(f, o1) * 2
    assert D.cf_sum_left(D.cfr_left(f, o2), o2, a=0) == f.restrict(1)
