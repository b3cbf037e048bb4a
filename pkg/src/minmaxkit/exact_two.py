"""Exact minmax value of three-player 0-1 games where Player 1 has two actions.

The value is always one of 0, 1/2, 3/4, 1 and is found by checking five
cases in order:

1. some Player 1 action pays 1 against everything          -> 1
2. some pure bully pair pays 0 against both P1 actions      -> 0
3. a pure Player 2 action lets Player 3 play matching pennies -> 1/2
4. a pure Player 3 action lets Player 2 play matching pennies -> 1/2
5. none of the above                                        -> 3/4

Every check reads each payoff a bounded number of times.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import ValidationError
from .game import BullyProfile, MixedStrategy, PayoffTensor
from .values import Exact

CASE_VALUES = {1: Fraction(1), 2: Fraction(0), 3: Fraction(1, 2), 4: Fraction(1, 2), 5: Fraction(3, 4)}


@dataclass(frozen=True)
class CaseResult:
    case_id: int
    witnesses: dict

    def check(self, game: PayoffTensor) -> bool:
        """Re-verify the defining predicate of the case against the payoffs."""
        _, n2, n3 = game.dims
        w = self.witnesses
        if self.case_id == 1:
            return all(game[w["i"], j, k] == 1 for j in range(n2) for k in range(n3))
        if self.case_id == 2:
            return all(game[i, w["j"], w["k"]] == 0 for i in range(2))
        if self.case_id == 3:
            return game[0, w["j"], w["k"]] == 0 and game[1, w["j"], w["k_prime"]] == 0
        if self.case_id == 4:
            return game[0, w["j"], w["k"]] == 0 and game[1, w["j_prime"], w["k"]] == 0
        return (
            game[0, w["j"], w["k"]] == 0
            and game[1, w["j_prime"], w["k_prime"]] == 0
            and w["j"] != w["j_prime"]
            and w["k"] != w["k_prime"]
        )


def _validate(game: PayoffTensor) -> None:
    if game.num_players != 3:
        raise ValidationError(f"expected a three-player game, got {game.num_players} players")
    if game.dims[0] != 2:
        raise ValidationError(f"Player 1 must have exactly 2 actions, has {game.dims[0]}")
    bad = [u for u in set(game.payoffs) if u not in (0, 1)]
    if bad:
        raise ValidationError(f"payoffs must be 0 or 1, found {sorted(bad)[0]}")


def classify_case(game: PayoffTensor) -> CaseResult:
    _validate(game)
    _, n2, n3 = game.dims
    a = [game.player1_slice(i) for i in range(2)]

    def u(i, j, k):
        return a[i][j * n3 + k]

    for i in range(2):
        if all(v == 1 for v in a[i]):
            return CaseResult(1, {"i": i})
    for j in range(n2):
        for k in range(n3):
            if u(0, j, k) == 0 and u(1, j, k) == 0:
                return CaseResult(2, {"j": j, "k": k})
    for j in range(n2):
        ks = [next((k for k in range(n3) if u(i, j, k) == 0), None) for i in range(2)]
        if None not in ks:
            return CaseResult(3, {"j": j, "k": ks[0], "k_prime": ks[1]})
    for k in range(n3):
        js = [next((j for j in range(n2) if u(i, j, k) == 0), None) for i in range(2)]
        if None not in js:
            return CaseResult(4, {"k": k, "j": js[0], "j_prime": js[1]})
    # not case 1, so both P1 actions have a zero somewhere
    zeros = [next((j, k) for j in range(n2) for k in range(n3) if u(i, j, k) == 0) for i in range(2)]
    (j, k), (jp, kp) = zeros
    return CaseResult(5, {"j": j, "k": k, "j_prime": jp, "k_prime": kp})


class TwoBySolution(NamedTuple):
    value: Exact
    profile: BullyProfile
    case: CaseResult


def solve_two_by(game: PayoffTensor) -> TwoBySolution:
    """Exact minmax value and an optimal threat for a ``2 x n x n'`` 0-1 game."""
    case = classify_case(game)
    _, n2, n3 = game.dims
    w = case.witnesses
    if case.case_id == 1:
        profile = BullyProfile.pure((n2, n3), (0, 0))
    elif case.case_id == 2:
        profile = BullyProfile.pure((n2, n3), (w["j"], w["k"]))
    elif case.case_id == 3:
        profile = BullyProfile.of(
            MixedStrategy.pure(n2, w["j"]), MixedStrategy.uniform(n3, (w["k"], w["k_prime"]))
        )
    elif case.case_id == 4:
        profile = BullyProfile.of(
            MixedStrategy.uniform(n2, (w["j"], w["j_prime"])), MixedStrategy.pure(n3, w["k"])
        )
    else:
        profile = BullyProfile.of(
            MixedStrategy.uniform(n2, (w["j"], w["j_prime"])),
            MixedStrategy.uniform(n3, (w["k"], w["k_prime"])),
        )
    return TwoBySolution(Exact(CASE_VALUES[case.case_id]), profile, case)
