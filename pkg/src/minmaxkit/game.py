"""Strategic-form games seen from Player 1, with exact rational payoffs.

Only Player 1's utility is stored.  Payoffs are kept as a flat row-major
tuple of ``Fraction`` with the last player's index varying fastest.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .errors import BudgetError, ValidationError

MAX_OUTCOMES = 10**7


def _frac(x) -> Fraction:
    if isinstance(x, float):
        raise ValidationError(f"payoff {x!r} is a float; use int, Fraction or 'p/q'")
    try:
        return Fraction(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"not a rational number: {x!r}") from exc


@dataclass(frozen=True)
class PayoffTensor:
    dims: tuple[int, ...]
    payoffs: tuple[Fraction, ...]

    def __post_init__(self):
        dims = tuple(int(n) for n in self.dims)
        if len(dims) < 2:
            raise ValidationError("a game needs at least two players")
        if any(n < 1 for n in dims):
            raise ValidationError(f"every player needs at least one action, got dims {dims}")
        payoffs = tuple(_frac(u) for u in self.payoffs)
        if len(payoffs) != math.prod(dims):
            raise ValidationError(
                f"payoff array has length {len(payoffs)}, dims {list(dims)} need {math.prod(dims)}"
            )
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "payoffs", payoffs)

    @classmethod
    def from_matrices(cls, matrices: Sequence[Sequence[Sequence]]) -> "PayoffTensor":
        """Three-player game from one ``n2 x n3`` matrix per Player 1 action."""
        k = len(matrices)
        n2 = len(matrices[0])
        n3 = len(matrices[0][0])
        flat = []
        for a in matrices:
            if len(a) != n2 or any(len(row) != n3 for row in a):
                raise ValidationError("ragged payoff matrices")
            for row in a:
                flat.extend(row)
        return cls((k, n2, n3), tuple(flat))

    @classmethod
    def from_function(cls, dims: Sequence[int], fn) -> "PayoffTensor":
        return cls(tuple(dims), tuple(fn(*idx) for idx in itertools.product(*map(range, dims))))

    @property
    def num_players(self) -> int:
        return len(self.dims)

    @property
    def strides(self) -> tuple[int, ...]:
        out = []
        acc = 1
        for n in reversed(self.dims):
            out.append(acc)
            acc *= n
        return tuple(reversed(out))

    def __getitem__(self, idx: Sequence[int]) -> Fraction:
        if len(idx) != len(self.dims):
            raise ValidationError(f"index {tuple(idx)} has wrong arity")
        pos = 0
        for i, n, s in zip(idx, self.dims, self.strides):
            if not 0 <= i < n:
                raise ValidationError(f"action index {i} out of range for {n} actions")
            pos += i * s
        return self.payoffs[pos]

    def payoff_range(self) -> tuple[Fraction, Fraction]:
        return min(self.payoffs), max(self.payoffs)

    def distinct_payoffs(self) -> list[Fraction]:
        return sorted(set(self.payoffs))

    def player1_slice(self, a1: int) -> tuple[Fraction, ...]:
        block = len(self.payoffs) // self.dims[0]
        return self.payoffs[a1 * block : (a1 + 1) * block]

    def restrict(self, actions: Sequence[Sequence[int]]) -> "PayoffTensor":
        """Subgame keeping only the listed actions of each player (in order)."""
        if len(actions) != len(self.dims):
            raise ValidationError("need one action list per player")
        return PayoffTensor(
            tuple(len(a) for a in actions),
            tuple(self[idx] for idx in itertools.product(*actions)),
        )

    def permute_players(self, order: Sequence[int]) -> "PayoffTensor":
        """Reorder the player axes; new player ``j`` is old player ``order[j]``."""
        order = list(order)
        if sorted(order) != list(range(self.num_players)):
            raise ValidationError(f"{order} is not a permutation of the players")
        new_dims = tuple(self.dims[o] for o in order)
        flat = []
        for idx in itertools.product(*map(range, new_dims)):
            old = [0] * len(idx)
            for j, o in enumerate(order):
                old[o] = idx[j]
            flat.append(self[old])
        return PayoffTensor(new_dims, tuple(flat))


def _check_probs(probs: Iterable) -> tuple[Fraction, ...]:
    out = tuple(_frac(p) for p in probs)
    if not out:
        raise ValidationError("a mixed strategy needs at least one action")
    if any(p < 0 for p in out):
        raise ValidationError(f"negative probability in {[str(p) for p in out]}")
    if sum(out) != 1:
        raise ValidationError(f"probabilities sum to {sum(out)}, not 1")
    return out


@dataclass(frozen=True)
class MixedStrategy:
    probs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "probs", _check_probs(self.probs))

    @classmethod
    def pure(cls, n: int, i: int) -> "MixedStrategy":
        return cls(tuple(Fraction(int(j == i)) for j in range(n)))

    @classmethod
    def uniform(cls, n: int, support: Sequence[int] | None = None) -> "MixedStrategy":
        support = list(range(n)) if support is None else list(support)
        w = Fraction(1, len(support))
        probs = [Fraction(0)] * n
        for i in support:
            probs[i] += w
        return cls(tuple(probs))

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.probs) if p)

    def __len__(self):
        return len(self.probs)


@dataclass(frozen=True)
class BullyProfile:
    """Independent mixed strategies of players 2..l."""

    strategies: tuple[MixedStrategy, ...]

    def __post_init__(self):
        strategies = tuple(
            s if isinstance(s, MixedStrategy) else MixedStrategy(tuple(s)) for s in self.strategies
        )
        object.__setattr__(self, "strategies", strategies)

    @classmethod
    def of(cls, *strategies) -> "BullyProfile":
        return cls(tuple(strategies))

    @classmethod
    def pure(cls, dims: Sequence[int], actions: Sequence[int]) -> "BullyProfile":
        return cls(tuple(MixedStrategy.pure(n, a) for n, a in zip(dims, actions)))

    def check(self, game: PayoffTensor) -> None:
        if len(self.strategies) != game.num_players - 1:
            raise ValidationError(
                f"profile has {len(self.strategies)} strategies, game has "
                f"{game.num_players - 1} bullies"
            )
        for j, (s, n) in enumerate(zip(self.strategies, game.dims[1:]), start=2):
            if len(s) != n:
                raise ValidationError(f"player {j} strategy has {len(s)} entries, expected {n}")

    def as_lists(self) -> list[list[Fraction]]:
        return [list(s.probs) for s in self.strategies]


def payoff_vector(game: PayoffTensor, profile: BullyProfile) -> tuple[Fraction, ...]:
    """Expected payoff of every pure action of Player 1 against ``profile``."""
    profile.check(game)
    values: list = list(game.payoffs)
    # contract the last axis first; blocks are contiguous in row-major order
    for strat in reversed(profile.strategies):
        probs = strat.probs
        n = len(probs)
        support = [(i, p) for i, p in enumerate(probs) if p]
        values = [
            sum(values[base + i] * p for i, p in support)
            for base in range(0, len(values), n)
        ]
    return tuple(Fraction(v) for v in values)


def expected_payoff(game: PayoffTensor, a1: int, profile: BullyProfile) -> Fraction:
    if not 0 <= a1 < game.dims[0]:
        raise ValidationError(f"Player 1 action {a1} out of range for {game.dims[0]} actions")
    return payoff_vector(game, profile)[a1]


class BestResponse(NamedTuple):
    value: Fraction
    argmax: tuple[int, ...]


def best_response_value(game: PayoffTensor, profile: BullyProfile) -> BestResponse:
    vec = payoff_vector(game, profile)
    best = max(vec)
    return BestResponse(best, tuple(i for i, v in enumerate(vec) if v == best))


def pad_game(game: PayoffTensor, c: int, budget: int = MAX_OUTCOMES) -> PayoffTensor:
    """Copy every strategy of an ``n x ... x n`` game ``n**(c-1)`` times.

    Action ``i`` of the padded game is a copy of original action
    ``i // n**(c-1)``.
    """
    if c < 2:
        raise ValidationError("padding exponent c must be at least 2")
    n = game.dims[0]
    if any(m != n for m in game.dims):
        raise ValidationError(f"padding needs equal action counts, got dims {list(game.dims)}")
    size = (n**c) ** game.num_players
    if size > budget:
        raise BudgetError("padded game outcomes", size, budget)
    return replicate(game, [n**c] * game.num_players)


def replicate(game: PayoffTensor, new_dims: Sequence[int], budget: int = MAX_OUTCOMES) -> PayoffTensor:
    """Blow each player's action set up to ``new_dims`` by duplicating actions.

    Action ``i`` of the result copies original action ``i * n // new_n``;
    when ``new_n`` is a multiple of ``n`` every action gets the same number of
    copies in consecutive blocks.
    """
    if len(new_dims) != game.num_players:
        raise ValidationError("need one target size per player")
    if any(m < n for m, n in zip(new_dims, game.dims)):
        raise ValidationError("replication cannot shrink an action set")
    size = math.prod(new_dims)
    if size > budget:
        raise BudgetError("replicated game outcomes", size, budget)
    maps = [[i * n // m for i in range(m)] for n, m in zip(game.dims, new_dims)]
    strides = game.strides
    flat = []
    for idx in itertools.product(*maps):
        flat.append(game.payoffs[sum(i * s for i, s in zip(idx, strides))])
    return PayoffTensor(tuple(new_dims), tuple(flat))


def lift_profile(profile: BullyProfile, copies: Sequence[int]) -> BullyProfile:
    """Spread each action's probability evenly over its ``copies[j]`` duplicates."""
    out = []
    for s, c in zip(profile.strategies, copies):
        out.append(MixedStrategy(tuple(p / c for p in s.probs for _ in range(c))))
    return BullyProfile(tuple(out))


class Rescaled(NamedTuple):
    game: PayoffTensor
    scale: Fraction
    shift: Fraction

    def to_original(self, x: Fraction) -> Fraction:
        """Map a value of the rescaled game back to the original payoff scale."""
        return (x - self.shift) / self.scale


def affine_transform(game: PayoffTensor, a, b) -> Rescaled:
    a, b = _frac(a), _frac(b)
    if a <= 0:
        raise ValidationError(f"scale factor must be positive, got {a}")
    return Rescaled(PayoffTensor(game.dims, tuple(a * u + b for u in game.payoffs)), a, b)


def normalize_unit(game: PayoffTensor) -> Rescaled:
    """Affine map sending the payoff range onto [0, 1] (identity for constant games in [0,1])."""
    lo, hi = game.payoff_range()
    if lo == hi:
        if 0 <= lo <= 1:
            return Rescaled(game, Fraction(1), Fraction(0))
        return affine_transform(game, 1, -lo)
    scale = 1 / (hi - lo)
    return affine_transform(game, scale, -lo * scale)


def dedupe_player1(game: PayoffTensor) -> tuple[PayoffTensor, list[int]]:
    """Drop Player 1 actions whose payoff slice repeats an earlier one.

    Returns the reduced game and the kept original action indices.  The
    best-response value of every profile is unchanged.
    """
    seen: dict[tuple, int] = {}
    keep = []
    for a in range(game.dims[0]):
        sl = game.player1_slice(a)
        if sl not in seen:
            seen[sl] = a
            keep.append(a)
    if len(keep) == game.dims[0]:
        return game, keep
    flat = tuple(u for a in keep for u in game.player1_slice(a))
    return PayoffTensor((len(keep),) + game.dims[1:], flat), keep


def dedupe_actions(game: PayoffTensor, player: int) -> tuple[PayoffTensor, list[int]]:
    """Like ``dedupe_player1`` for any player (0-based axis).

    Identical actions of a bully can be merged without changing the minmax
    value: moving the mass of a copy onto the original leaves every
    expected payoff as it was.
    """
    if player == 0:
        return dedupe_player1(game)
    order = [player] + [p for p in range(game.num_players) if p != player]
    _, keep = dedupe_player1(game.permute_players(order))
    if len(keep) == game.dims[player]:
        return game, keep
    actions = [range(n) for n in game.dims]
    actions[player] = keep
    return game.restrict(actions), keep
