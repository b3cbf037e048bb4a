import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from gamebank import CASE5, QUAD_2X2X2
from minmaxkit.errors import BudgetError
from minmaxkit.game import PayoffTensor
from minmaxkit.zerosum import maxmin_value, zs_value

entries = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def two_row_value(m):
    """max over p of min_j p*a_j + (1-p)*b_j, via breakpoints of the lower envelope."""
    a, b = m
    cands = {Fraction(0), Fraction(1)}
    for (a1, b1), (a2, b2) in itertools.combinations(zip(a, b), 2):
        den = (a1 - b1) - (a2 - b2)
        if den:
            p = (b2 - b1) / den
            if 0 <= p <= 1:
                cands.add(p)
    return max(min(p * x + (1 - p) * y for x, y in zip(a, b)) for p in cands)


def test_matching_pennies():
    sol = zs_value([[1, 0], [0, 1]])
    assert sol.value == Fraction(1, 2)
    assert sol.row_strategy.probs == (Fraction(1, 2),) * 2
    assert sol.col_strategy.probs == (Fraction(1, 2),) * 2


def test_single_entry():
    sol = zs_value([[Fraction(-7, 3)]])
    assert sol.value == Fraction(-7, 3)
    assert sol.row_strategy.probs == (1,) and sol.col_strategy.probs == (1,)


def test_closed_form_2x2():
    sol = zs_value([[3, 1], [0, 2]])
    # (ad - bc) / (a + d - b - c) for a game without a saddle point
    assert sol.value == Fraction(3 * 2 - 1 * 0, 3 + 2 - 1 - 0) == Fraction(3, 2)
    assert sol.row_strategy.probs == (Fraction(1, 2), Fraction(1, 2))
    assert sol.verify([[3, 1], [0, 2]])


@given(st.integers(1, 8).flatmap(lambda n: st.lists(st.lists(entries, min_size=n, max_size=n), min_size=2, max_size=2)))
@settings(max_examples=150)
def test_two_rows_against_envelope(m):
    sol = zs_value(m)
    assert sol.value == two_row_value(m)
    assert sol.verify(m)


@given(st.integers(1, 4), st.integers(1, 7), st.data())
@settings(max_examples=120)
def test_certificates_and_support(k, n, data):
    m = data.draw(st.lists(st.lists(entries, min_size=n, max_size=n), min_size=k, max_size=k))
    sol = zs_value(m)
    assert sol.verify(m)
    assert sol.col_support_size <= k
    # float LP from a different code path agrees
    a = np.array(m, dtype=float)
    res = linprog(
        np.r_[np.zeros(n), 1.0],
        A_ub=np.hstack([a, -np.ones((k, 1))]), b_ub=np.zeros(k),
        A_eq=np.r_[np.ones(n), 0.0][None, :], b_eq=[1.0],
        bounds=[(0, None)] * n + [(None, None)], method="highs",
    )
    assert abs(res.fun - float(sol.value)) < 1e-7


def test_degenerate_matrix_terminates():
    # heavy ties are where cycling would show up without Bland's rule
    m = [[1, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 1], [0, 0, 1, 1]]
    sol = zs_value(m)
    assert sol.value == Fraction(1, 2)
    assert sol.verify(m)


def test_maxmin_case5():
    sol = maxmin_value(CASE5)
    assert sol.value == Fraction(1, 2)
    assert sol.row_strategy.probs == (Fraction(1, 2), Fraction(1, 2))


def test_maxmin_constant():
    g = PayoffTensor((2, 3, 2), (Fraction(5, 7),) * 12)
    assert maxmin_value(g).value == Fraction(5, 7)


def test_maxmin_of_the_irrational_example_is_zero():
    # columns (j,k) = (0,1) and (1,0) are zero for both rows
    sol = maxmin_value(QUAD_2X2X2)
    rows = [QUAD_2X2X2.player1_slice(0), QUAD_2X2X2.player1_slice(1)]
    brute = max(
        min(p * x + (1 - p) * y for x, y in zip(*rows))
        for p in (Fraction(i, 100) for i in range(101))
    )
    assert sol.value == 0 == brute


def test_maxmin_budget():
    g = PayoffTensor((1, 40, 40), (0,) * 1600)
    with pytest.raises(BudgetError):
        maxmin_value(g, budget=1000)
