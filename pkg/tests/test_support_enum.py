from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gamebank import QUAD_2X2X2, GOLDEN_3X2X2, all_binary_2x2x2, games, random_game
from minmaxkit.errors import BudgetError, ValidationError
from minmaxkit.exact_two import solve_two_by
from minmaxkit.game import PayoffTensor, best_response_value, pad_game, replicate
from minmaxkit.oracle import oracle_minmax
from minmaxkit.support_enum import (
    SupportSet,
    decide_minmax_leq,
    enumerate_supports,
    minmax_support_enum,
)
from minmaxkit.values import Bracket, Exact, QuadIrr, compare_to
from minmaxkit.zerosum import maxmin_value


def test_enumerate_supports():
    assert [s.indices for s in enumerate_supports(3, 2)] == [(0, 1), (0, 2), (1, 2)]
    assert [s.indices for s in enumerate_supports(4, 4)] == [(0, 1, 2, 3)]
    assert len(enumerate_supports(6, 3)) == 20
    with pytest.raises(ValidationError):
        enumerate_supports(2, 3)


def test_support_set_validation():
    with pytest.raises(ValidationError):
        SupportSet(1, (0,))
    with pytest.raises(ValidationError):
        SupportSet(2, (1, 1))
    with pytest.raises(ValidationError):
        SupportSet(3, ())


def test_matches_exact_two_everywhere():
    for g in all_binary_2x2x2():
        sol = minmax_support_enum(g)
        assert sol.value == solve_two_by(g).value


def test_golden_ratio_exact_and_numeric():
    sol = minmax_support_enum(GOLDEN_3X2X2)
    assert sol.value == QuadIrr(Fraction(3, 2), Fraction(-1, 2), 5)
    assert sol.symbolic_profile is not None
    num = minmax_support_enum(GOLDEN_3X2X2, mode="numeric")
    assert isinstance(num.value, Bracket) and not num.unconverged
    assert num.value.hi - num.value.lo <= Fraction(1, 10**9)
    assert compare_to(sol.value, num.value.lo) >= 0 and compare_to(sol.value, num.value.hi) <= 0


def test_irrational_example_game():
    assert minmax_support_enum(QUAD_2X2X2).value == Exact(Fraction(0))


def test_decide():
    assert decide_minmax_leq(GOLDEN_3X2X2, Fraction(1, 3)).answer == "no"
    assert decide_minmax_leq(GOLDEN_3X2X2, Fraction(2, 5)).answer == "yes"
    g = random_game((3, 3, 3), 4, values=range(4))
    assert decide_minmax_leq(g, g.payoff_range()[1]).answer == "yes"
    assert decide_minmax_leq(g, g.payoff_range()[1], mode="numeric").answer == "yes"


def test_decide_unknown_in_numeric_mode():
    # alpha inside a deliberately loose bracket
    g = random_game((3, 3, 3), 2)
    sol = minmax_support_enum(g, mode="numeric", tol=Fraction(1, 2), max_nodes=1, refinements=0)
    if isinstance(sol.value, Bracket) and sol.value.lo < sol.value.hi:
        mid = (sol.value.lo + sol.value.hi) / 2
        d = decide_minmax_leq(g, mid, mode="numeric", tol=Fraction(1, 2), max_nodes=1, refinements=0)
        assert d.answer == "unknown"


@given(st.sampled_from([(2, 3, 3), (3, 3, 2), (3, 3, 3), (2, 4, 4), (3, 4, 3)]).flatmap(
    lambda d: games(d, values=st.integers(0, 2))))
@settings(max_examples=15, deadline=None)
def test_intersects_oracle(g):
    # a loose tolerance keeps degenerate draws fast; soundness is what matters
    sol = minmax_support_enum(g, tol=Fraction(1, 10**6), max_nodes=400)
    br = oracle_minmax(g, 24).bracket
    if isinstance(sol.value, Bracket):
        assert max(sol.value.lo, br.lo) <= min(sol.value.hi, br.hi)
    else:
        assert compare_to(sol.value, br.lo) >= 0 and compare_to(sol.value, br.hi) <= 0
    # maxmin never exceeds the minmax value
    floor = maxmin_value(g).value
    assert compare_to(sol.value, floor) >= 0 if not isinstance(sol.value, Bracket) else sol.value.hi >= floor


def test_degenerate_flat_optimum_stays_sound():
    flat = [1, 0, 2, 0, 2, 0, 1, 1, 1, 2, 1, 2, 1, 2, 1, 2, 0, 1, 1, 1, 1, 1, 2, 2, 2, 2, 0, 0, 2, 2, 0, 2, 2, 1, 0, 0]
    g = PayoffTensor((3, 4, 3), tuple(Fraction(x) for x in flat))
    sol = minmax_support_enum(g, tol=Fraction(1, 10**9), max_nodes=200)
    assert sol.value.hi == 1
    assert sol.value.lo <= 1
    assert sol.unconverged == (sol.value.hi - sol.value.lo > Fraction(1, 10**9))


def test_profile_is_lifted_to_full_game():
    g = random_game((2, 4, 3), 7)
    sol = minmax_support_enum(g)
    assert [len(s.probs) for s in sol.profile.strategies] == [4, 3]
    assert best_response_value(g, sol.profile).value == sol.value.as_number().a


def test_padding_keeps_value():
    padded = pad_game(GOLDEN_3X2X2.restrict([range(2), range(2), range(2)]), 2)
    base = minmax_support_enum(GOLDEN_3X2X2.restrict([range(2), range(2), range(2)]))
    assert minmax_support_enum(padded).value == base.value
    wide = replicate(GOLDEN_3X2X2, (6, 4, 4))
    assert minmax_support_enum(wide).value == minmax_support_enum(GOLDEN_3X2X2).value


def test_errors():
    with pytest.raises(ValidationError, match="cap"):
        minmax_support_enum(random_game((7, 7, 7), 0, values=range(50)), mode="numeric")
    with pytest.raises(BudgetError, match="support pairs"):
        minmax_support_enum(random_game((3, 9, 9), 1, values=range(9)), budget=100)
    with pytest.raises(ValidationError, match="mode"):
        minmax_support_enum(QUAD_2X2X2, mode="fast")
