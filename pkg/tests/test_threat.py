from fractions import Fraction

import pytest

from gamebank import CASE5, random_game
from minmaxkit.errors import BudgetError, ValidationError
from minmaxkit.exact_two import solve_two_by
from minmaxkit.game import PayoffTensor, best_response_value
from minmaxkit.oracle import oracle_minmax
from minmaxkit.threat import (
    bully_threat_value,
    lattice_resolution,
    map_back,
    simplex_lattice,
    threat_point,
)
from minmaxkit.values import Bracket, Exact, QuadIrr


def test_lattice_examples():
    assert [s.probs for s in simplex_lattice(2, 2)] == [(0, 1), (Fraction(1, 2), Fraction(1, 2)), (1, 0)]
    assert sorted(s.probs for s in simplex_lattice(3, 1)) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert len(simplex_lattice(3, 4)) == 15
    with pytest.raises(BudgetError):
        simplex_lattice(6, 40, budget=1000)


def test_resolution():
    assert lattice_resolution(2, Fraction(1, 10)) == 20
    assert lattice_resolution(1, Fraction(1, 2)) == 1
    with pytest.raises(ValidationError):
        lattice_resolution(3, 0)


def test_independent_of_small_bully():
    # u1 ignores Player 2, so the residual game never changes
    base = [[1, 0], [0, 1]]
    g = PayoffTensor.from_matrices([[row, row] for row in base])
    res = bully_threat_value(g, Fraction(1, 5))
    assert res.value.hi == Fraction(1, 2)


def test_case5_bracket():
    res = bully_threat_value(CASE5, Fraction(1, 4))
    assert res.value.lo <= Fraction(3, 4) <= res.value.hi
    assert res.value.hi - res.value.lo <= Fraction(1, 4)
    assert best_response_value(CASE5, res.profile).value == res.value.hi


@pytest.mark.parametrize("seed", range(3))
def test_against_oracle(seed):
    g = random_game((4, 2, 4), seed)
    res = bully_threat_value(g, Fraction(1, 10))
    grid = oracle_minmax(g, 40).bracket
    assert max(res.value.lo, grid.lo) <= min(res.value.hi, grid.hi)


def test_third_player_as_bully():
    g = random_game((3, 4, 2), 5)
    res = bully_threat_value(g, Fraction(1, 8), bully=3)
    assert [len(s.probs) for s in res.profile.strategies] == [4, 2]
    assert best_response_value(g, res.profile).value == res.value.hi


def test_finer_lattice_never_worse():
    g = random_game((3, 3, 3), 8, values=range(3), denominators=(2,))
    his = [bully_threat_value(g, Fraction(4, m)).value.hi for m in (1, 2, 4)]
    assert his == sorted(his, reverse=True)


def test_payoff_range_checked():
    with pytest.raises(ValidationError, match=r"\[0, 1\]"):
        bully_threat_value(random_game((2, 2, 2), 0, values=(0, 3)), Fraction(1, 4))


def test_map_back():
    assert map_back(Exact(Fraction(1, 2)), Fraction(1, 2), Fraction(1)) == Exact(Fraction(-1))
    assert map_back(QuadIrr(Fraction(1), Fraction(1), 2), Fraction(2), Fraction(0)) == QuadIrr(
        Fraction(1, 2), Fraction(1, 2), 2
    )
    assert map_back(Bracket(Fraction(0), Fraction(1)), Fraction(1, 4), Fraction(0)) == Bracket(
        Fraction(0), Fraction(4)
    )


def test_constant_threat_point():
    c = Fraction(2, 5)
    g = PayoffTensor((2, 3, 2), (c,) * 12)
    entries = threat_point(g, Fraction(1, 10), g.payoffs, g.payoffs)
    assert [e.value for e in entries] == [Exact(c)] * 3


def test_exact_two_threat_point():
    u1 = CASE5
    # every player sees a two-action Case-5 style game
    entries = threat_point(u1, Fraction(1, 10), u1.payoffs, u1.payoffs)
    assert entries[0].method == "exact-two"
    assert entries[0].value == solve_two_by(u1).value
    for e in entries:
        assert e.value.value in {0, Fraction(1, 2), Fraction(3, 4), 1}


def test_missing_and_bully_choice():
    g = random_game((4, 2, 4), 1)
    entries = threat_point(g, Fraction(1, 10))
    assert entries[0].value is not None
    assert [e.method for e in entries[1:]] == ["missing", "missing"]
    big = random_game((8, 2, 8), 2, values=range(9))
    e = threat_point(big, Fraction(1, 10), small_player=2)[0]
    assert e.method == "bully-threat(player 2)"
    grid = oracle_minmax(big, 8).bracket
    assert max(e.value.lo, grid.lo) <= min(e.value.hi, grid.hi)


def test_bad_epsilon():
    with pytest.raises(ValidationError):
        threat_point(CASE5, 0)
