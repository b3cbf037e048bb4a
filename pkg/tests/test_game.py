from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gamebank import CASE5, QUAD_2X2X2, games, mixed_strategies, random_int_game
from minmaxkit.errors import BudgetError, ValidationError
from minmaxkit.game import (
    BullyProfile,
    MixedStrategy,
    PayoffTensor,
    affine_transform,
    best_response_value,
    dedupe_player1,
    expected_payoff,
    lift_profile,
    pad_game,
    payoff_vector,
    replicate,
)

UNIFORM2 = BullyProfile.of(MixedStrategy.uniform(2), MixedStrategy.uniform(2))


def test_layout_last_player_fastest():
    g = PayoffTensor((2, 2, 3), tuple(range(12)))
    assert g[0, 0, 2] == 2
    assert g[0, 1, 0] == 3
    assert g[1, 0, 0] == 6
    assert QUAD_2X2X2[1, 1, 1] == 2


def test_expected_payoff_examples():
    assert expected_payoff(QUAD_2X2X2, 0, UNIFORM2) == Fraction(1, 4)
    s = MixedStrategy((Fraction(3, 5), Fraction(2, 5)))
    assert expected_payoff(QUAD_2X2X2, 1, BullyProfile.of(s, s)) == Fraction(8, 25)


@given(games((2, 3, 2)), st.integers(0, 1), st.integers(0, 2), st.integers(0, 1))
def test_pure_profile_reads_entry(g, a, j, k):
    assert expected_payoff(g, a, BullyProfile.pure((3, 2), (j, k))) == g[a, j, k]


def test_best_response_examples():
    br = best_response_value(QUAD_2X2X2, UNIFORM2)
    assert br.value == Fraction(1, 2)
    assert br.argmax == (1,)
    assert best_response_value(CASE5, UNIFORM2).value == Fraction(3, 4)
    const = PayoffTensor((3, 2, 2), (Fraction(7, 3),) * 12)
    br = best_response_value(const, UNIFORM2)
    assert br.value == Fraction(7, 3) and br.argmax == (0, 1, 2)


def test_validation_errors():
    with pytest.raises(ValidationError):
        PayoffTensor((2, 2), (1, 2, 3))
    with pytest.raises(ValidationError):
        PayoffTensor((2, 1), (0.5, 1))
    with pytest.raises(ValidationError):
        MixedStrategy((Fraction(1, 2), Fraction(1, 3)))
    with pytest.raises(ValidationError):
        MixedStrategy((Fraction(3, 2), Fraction(-1, 2)))
    with pytest.raises(ValidationError):
        expected_payoff(QUAD_2X2X2, 0, BullyProfile.of(MixedStrategy.uniform(3), MixedStrategy.uniform(2)))
    with pytest.raises(ValidationError):
        expected_payoff(QUAD_2X2X2, 2, UNIFORM2)
    with pytest.raises(ValidationError):
        expected_payoff(QUAD_2X2X2, 0, BullyProfile.of(MixedStrategy.uniform(2)))


@given(games((3, 3, 2)), mixed_strategies(3), mixed_strategies(3), mixed_strategies(2), st.fractions(0, 1))
@settings(max_examples=60)
def test_multilinear_in_each_bully(g, s, t, s3, lam):
    # payoffs along the segment s -> t are affine in the mixing weight
    mix = MixedStrategy(tuple((1 - lam) * a + lam * b for a, b in zip(s.probs, t.probs)))
    at = lambda x: payoff_vector(g, BullyProfile.of(x, s3))  # noqa: E731
    for a, b, c in zip(at(s), at(t), at(mix)):
        assert c == (1 - lam) * a + lam * b


@given(games((2, 2, 3)), mixed_strategies(2), mixed_strategies(3),
       st.fractions(min_value=Fraction(1, 10), max_value=5), st.fractions(-3, 3))
@settings(max_examples=60)
def test_affine_transform_commutes(g, s2, s3, a, b):
    prof = BullyProfile.of(s2, s3)
    res = affine_transform(g, a, b)
    before, after = best_response_value(g, prof), best_response_value(res.game, prof)
    assert after.value == a * before.value + b
    assert after.argmax == before.argmax
    assert res.to_original(after.value) == before.value


def test_affine_examples():
    assert affine_transform(QUAD_2X2X2, 1, 0).game == QUAD_2X2X2
    half = affine_transform(QUAD_2X2X2, Fraction(1, 2), 0).game
    assert half.payoff_range() == (0, 1)
    with pytest.raises(ValidationError):
        affine_transform(QUAD_2X2X2, 0, 1)
    with pytest.raises(ValidationError):
        affine_transform(QUAD_2X2X2, -1, 1)


def test_pad_block_layout():
    g = random_int_game((2, 2, 2), seed=4)
    p = pad_game(g, 2)
    assert p.dims == (4, 4, 4)
    assert p[3, 0, 2] == g[1, 0, 1]
    p3 = pad_game(g, 3)
    assert p3.dims == (8, 8, 8)
    for i in range(8):
        for j in range(8):
            assert p3[i, j, 7] == g[i // 4, j // 4, 1]


def test_pad_rejects():
    with pytest.raises(ValidationError):
        pad_game(random_int_game((2, 3, 3), seed=0), 2)
    with pytest.raises(ValidationError):
        pad_game(QUAD_2X2X2, 1)
    with pytest.raises(BudgetError, match="requires 262144 items"):
        pad_game(QUAD_2X2X2, 6, budget=10**5)


@given(mixed_strategies(2), mixed_strategies(2), st.integers(0, 30))
@settings(max_examples=30)
def test_pad_preserves_best_response_under_lifting(s2, s3, seed):
    g = random_int_game((2, 2, 2), seed=seed)
    prof = BullyProfile.of(s2, s3)
    lifted = lift_profile(prof, (2, 2))
    assert best_response_value(pad_game(g, 2), lifted).value == best_response_value(g, prof).value


def test_replicate_uneven():
    g = random_int_game((2, 2, 2), seed=1)
    r = replicate(g, (2, 3, 2))
    assert [r[0, j, 0] for j in range(3)] == [g[0, 0, 0], g[0, 0, 0], g[0, 1, 0]]


def test_dedupe_player1():
    g = replicate(CASE5, (6, 2, 2))
    red, keep = dedupe_player1(g)
    assert keep == [0, 3]
    assert red == CASE5


def test_restrict_and_permute():
    g = random_int_game((3, 2, 4), seed=2)
    sub = g.restrict([[0, 2], [1], [3, 0]])
    assert sub.dims == (2, 1, 2)
    assert sub[1, 0, 0] == g[2, 1, 3]
    perm = g.permute_players((0, 2, 1))
    assert perm.dims == (3, 4, 2)
    assert perm[2, 3, 1] == g[2, 1, 3]
