import os
import sys
from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from cffrac.grid import GridFunction  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

OPEN_ORDERS = [Fraction(1, 5), Fraction(1, 4), Fraction(1, 3), Fraction(1, 2),
               Fraction(2, 3), Fraction(3, 4), Fraction(4, 5)]

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=60)
open_orders = st.fractions(min_value=0, max_value=1, max_denominator=30).filter(lambda x: 0 < x < 1)


@st.composite
def grid_functions(draw, min_len=2, max_len=10, a=None):
    n = draw(st.integers(min_len, max_len))
    start = draw(st.integers(-5, 5)) if a is None else a
    vals = draw(st.lists(rationals, min_size=n, max_size=n))
    return GridFunction.on(start, start + n - 1, vals)


@st.composite
def grid_function_pairs(draw, min_len=4, max_len=10):
    f = draw(grid_functions(min_len, max_len))
    vals = draw(st.lists(rationals, min_size=len(f.domain), max_size=len(f.domain)))
    return f, GridFunction(f.domain, tuple(vals))


@pytest.fixture
def tmp_cwd(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


# one line per acceptance criterion, printed after the test session
ACCEPTANCE_LINES = {}


def record_criterion(number: int, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES[number] = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(ACCEPTANCE_LINES[number])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
