"""Minmax approximation by simple (uniform multiset) bully strategies.

A simple strategy of size ``s`` plays each action with probability
``count / s``.  Searching every pair of them gives an upper bound on the
minmax value that is within ``2 * sqrt(ln n / (2 s))`` of it when payoffs
lie in [0, 1] (Hoeffding plus a union bound over Player 1's actions).

Also builds the family of games on which small supports are useless.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import NamedTuple

import mpmath

from .errors import BudgetError, ValidationError
from .game import BullyProfile, MixedStrategy, PayoffTensor, best_response_value, replicate
from .oracle import GRID_BUDGET, composition_count, compositions, lattice_min, lattice_profile
from .values import Exact


def support_size(n: int, epsilon) -> int:
    """``ceil(ln n / (2 eps^2))``, evaluated with interval arithmetic."""
    eps = Fraction(epsilon)
    if eps <= 0:
        raise ValidationError(f"epsilon must be positive, got {eps}")
    if eps > 1:
        raise ValidationError(f"epsilon must be at most 1, got {eps}")
    if n < 2:
        raise ValidationError(f"need n >= 2, got {n}")
    # ln(n) * q^2 / (2 p^2) for eps = p/q; ln n is irrational so the loop ends
    num, den = eps.denominator**2, 2 * eps.numerator**2
    prec = 64
    while True:
        with mpmath.workprec(prec):
            x = mpmath.iv.log(mpmath.iv.mpf(n)) * num / den
            lo, hi = int(mpmath.floor(x.a)), int(mpmath.floor(x.b))
        if lo == hi:
            return lo + 1
        prec *= 2


def _multisets(n: int, s: int):
    # count vectors reversed so rows follow lexicographic order of the
    # non-decreasing index sequences
    return compositions(n, s)[::-1].copy()


class SimpleResult(NamedTuple):
    value: Exact
    profile: BullyProfile
    s: int


def approx_minmax_simple(game: PayoffTensor, s: int, budget: int = GRID_BUDGET) -> SimpleResult:
    """Best pair of size-``s`` simple strategies, exactly evaluated."""
    if game.num_players != 3:
        raise ValidationError(f"simple-strategy search needs three players, got {game.num_players}")
    if s < 1:
        raise ValidationError(f"multiset size must be at least 1, got {s}")
    lo, hi = game.payoff_range()
    if lo < 0 or hi > 1:
        raise ValidationError("payoffs must lie in [0, 1]; rescale with affine_transform first")
    _, n2, n3 = game.dims
    pairs = composition_count(n2, s) * composition_count(n3, s)
    if pairs > budget:
        raise BudgetError("simple strategy pairs", pairs, budget)
    counts = [_multisets(n2, s), _multisets(n3, s)]
    value, idx = lattice_min(game, counts, (s, s))
    profile = lattice_profile(counts, (s, s), idx)
    return SimpleResult(Exact(value), profile, s)


def error_bound(n: int, s: int) -> float:
    """Additive guarantee ``2 sqrt(ln n / (2 s))`` of a size-``s`` search."""
    return 2 * math.sqrt(math.log(n) / (2 * s))


def approx_minmax_epsilon(game: PayoffTensor, epsilon, budget: int = GRID_BUDGET) -> SimpleResult:
    """Simple-strategy search sized so the answer is within ``epsilon`` of the value."""
    n = max(2, game.dims[0])
    s = support_size(n, Fraction(epsilon) / 2)
    return approx_minmax_simple(game, s, budget)


def hard_instance(n: int, c: int, padded: bool = False) -> tuple[PayoffTensor, int]:
    """Game where every bully profile with supports of size ``<= c`` concedes 1.

    Player 1's actions are ordered pairs ``(S, T)`` of ``c``-subsets of
    ``range(m)`` (in lexicographic order); Player 1 scores 1 iff Player 2 plays
    inside ``S`` and Player 3 inside ``T``.  ``m`` is the largest integer with
    ``C(m, c)**2 <= n``.  With ``padded`` the game is blown up to
    ``n x n x n`` by duplicating actions.
    """
    if c < 1:
        raise ValidationError(f"c must be at least 1, got {c}")
    m = c
    if math.comb(m, c) ** 2 > n:
        raise ValidationError(f"instance too small: n={n} < C({c},{c})^2, no m >= c fits")
    while math.comb(m + 1, c) ** 2 <= n:
        m += 1
    subsets = list(itertools.combinations(range(m), c))
    members = [frozenset(x) for x in subsets]
    flat = []
    for S, T in itertools.product(members, members):
        for j in range(m):
            for k in range(m):
                flat.append(Fraction(int(j in S and k in T)))
    game = PayoffTensor((len(members) ** 2, m, m), tuple(flat))
    if padded:
        game = replicate(game, (n, n, n))
    return game, m


def uniform_value(game: PayoffTensor) -> Fraction:
    """Best-response value against uniformly mixing bullies."""
    _, n2, n3 = game.dims
    return best_response_value(
        game, BullyProfile.of(MixedStrategy.uniform(n2), MixedStrategy.uniform(n3))
    ).value
