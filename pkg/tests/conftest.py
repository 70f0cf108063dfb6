from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from fuzzy_ershov.numeric import UnitRational
from fuzzy_ershov.trace import ApproximationTrace, Shape

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

# (number, title, passed, detail) appended by test_acceptance
ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num, title, passed, detail in sorted(ACCEPTANCE_RESULTS):
        mark = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{mark}] {num:>2}. {title}: {detail}")


def unit_rationals(max_denominator=16):
    return st.integers(1, max_denominator).flatmap(
        lambda d: st.integers(0, d).map(lambda p: UnitRational(p, d))
    )


@st.composite
def tables(draw, max_x=4, max_s=12, max_denominator=16, X=None, S=None):
    X = X or draw(st.integers(1, max_x))
    S = S or draw(st.integers(1, max_s))
    cells = draw(st.lists(
        st.tuples(st.integers(1, max_denominator), st.integers(0, max_denominator)),
        min_size=X * S, max_size=X * S,
    ))
    vals = [UnitRational(p % (d + 1), d) for d, p in cells]
    return [vals[x * S:(x + 1) * S] for x in range(X)]


@st.composite
def traces(draw, shape=Shape.DELTA2, **kw):
    rows = draw(tables(**kw))
    if shape is Shape.SIGMA1:
        rows = [[Fraction(0)] + sorted(r[1:]) for r in rows]
    elif shape is Shape.PI1:
        rows = [[Fraction(1)] + sorted(r[1:], reverse=True) for r in rows]
    elif shape is Shape.CRISP:
        rows = [[1 if v > Fraction(1, 2) else 0 for v in r] for r in rows]
    return ApproximationTrace(tuple(map(tuple, rows)), shape)


@pytest.fixture
def worked():
    """The four-stage row 0, 1/2, 1/4, 3/4 used throughout the examples."""
    return ApproximationTrace(
        ((UnitRational(0), UnitRational(1, 2), UnitRational(1, 4), UnitRational(3, 4)),)
    )
