"""Minmax value of three-player games by enumerating bully supports.

If Player 1 has ``k`` distinct actions, some optimal threat has both bully
supports of size at most ``k``: fix one bully's optimal strategy and the
other faces a ``k``-row zero-sum game, which has a basic optimal answer.
So the minmax value is the minimum over all support pairs of the value of
the restricted subgame.

Subgames whose bullies keep two actions each are solved exactly (see
``bilinear``); larger ones get a certified numeric bracket.  Duplicated
actions of any player are merged first, and identical subgames are solved
once.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from .bilinear import SubgameSolution, solve_subgame_exact2
from .errors import BudgetError, ValidationError
from .game import BullyProfile, MixedStrategy, PayoffTensor, dedupe_actions, dedupe_player1
from .numeric import DEFAULT_MAX_NODES, SUBGAME_CAP, solve_subgame_numeric
from .values import Bracket, GameValue, QuadNumber, compare_to, is_algebraic
from .zerosum import maxmin_value

PAIR_BUDGET = 10**6
DEFAULT_TOL = Fraction(1, 10**9)


@dataclass(frozen=True)
class SupportSet:
    player: int
    indices: tuple[int, ...]

    def __post_init__(self):
        if self.player not in (2, 3):
            raise ValidationError(f"support belongs to a bully (2 or 3), got {self.player}")
        if not self.indices or any(b <= a for a, b in zip(self.indices, self.indices[1:])):
            raise ValidationError(f"support indices must be strictly increasing, got {self.indices}")
        if self.indices[0] < 0:
            raise ValidationError("negative action index in support")


def enumerate_supports(n: int, k: int, player: int = 2) -> list[SupportSet]:
    """All size-``k`` subsets of ``range(n)``, lexicographically."""
    if not 1 <= k <= n:
        raise ValidationError(f"need 1 <= k <= n, got k={k}, n={n}")
    return [SupportSet(player, c) for c in itertools.combinations(range(n), k)]


def _goes_exact(sub: PayoffTensor, numeric: bool) -> bool:
    return not numeric and max(sub.dims[1:]) <= 2


def _solve_one(args) -> SubgameSolution:
    sub, numeric, tol, seed, max_nodes = args
    if _goes_exact(sub, numeric):
        return solve_subgame_exact2(sub)
    return solve_subgame_numeric(sub, tol=tol, seed=seed, max_nodes=max_nodes)


def _lift(sol: SubgameSolution, dims: Sequence[int], supports) -> tuple[BullyProfile, Optional[tuple]]:
    strategies = []
    for s, n, supp in zip(sol.profile.strategies, dims, supports):
        probs = [Fraction(0)] * n
        for p, a in zip(s.probs, supp):
            probs[a] = p
        strategies.append(MixedStrategy(tuple(probs)))
    symbolic = None
    if sol.symbolic_profile is not None:
        symbolic = []
        for s, n, supp in zip(sol.symbolic_profile, dims, supports):
            probs = [QuadNumber(Fraction(0))] * n
            for p, a in zip(s, supp):
                probs[a] = p
            symbolic.append(tuple(probs))
        symbolic = tuple(symbolic)
    return BullyProfile(tuple(strategies)), symbolic


def _upper(v: GameValue):
    return v.as_number() if is_algebraic(v) else QuadNumber(v.hi)


def _lower(v: GameValue):
    return v.as_number() if is_algebraic(v) else QuadNumber(v.lo)


def _gap(lo: QuadNumber, hi: QuadNumber) -> Fraction:
    return hi.bounds()[1] - lo.bounds()[0]


def minmax_support_enum(
    game: PayoffTensor,
    mode: str = "exact",
    tol=DEFAULT_TOL,
    seed: int = 0,
    workers: int = 1,
    max_nodes: int = DEFAULT_MAX_NODES,
    refinements: int = 2,
    budget: int = PAIR_BUDGET,
) -> SubgameSolution:
    """Minmax value as the minimum over support-restricted subgames.

    ``mode="exact"`` solves two-action subgames symbolically and falls back
    to numeric brackets elsewhere; ``mode="numeric"`` brackets every
    subgame to width ``tol``.  The returned profile is on the full game.
    """
    if game.num_players != 3:
        raise ValidationError(f"support enumeration needs three players, got {game.num_players}")
    if mode not in ("exact", "numeric"):
        raise ValidationError(f"unknown mode {mode!r}")
    tol = Fraction(tol)
    reduced, _ = dedupe_player1(game)
    # copies of a bully action never help, so solve on the distinct ones
    reduced, keep2 = dedupe_actions(reduced, 1)
    reduced, keep3 = dedupe_actions(reduced, 2)
    k, n2, n3 = reduced.dims
    k2, k3 = min(k, n2), min(k, n3)
    numeric = mode == "numeric"
    if (numeric or max(k2, k3) > 2) and max(k2, k3) > SUBGAME_CAP:
        raise ValidationError(
            f"subgames of size {k2}x{k3} exceed the numeric cap {SUBGAME_CAP} (Player 1 has {k} distinct actions)"
        )
    pairs = math.comb(n2, k2) * math.comb(n3, k3)
    if pairs > budget:
        raise BudgetError("support pairs", pairs, budget)

    sup2 = enumerate_supports(n2, k2, 2)
    sup3 = enumerate_supports(n3, k3, 3)
    floor = maxmin_value(reduced).value

    # group identical subgames
    order, groups = [], {}
    for a, b in itertools.product(sup2, sup3):
        sub = reduced.restrict([range(k), a.indices, b.indices])
        key = (sub.dims, sub.payoffs)
        if key not in groups:
            groups[key] = sub
        order.append((a.indices, b.indices, key))

    solved: dict = {}

    def solve_all(keys, t):
        args = [(groups[key], numeric, t, seed, max_nodes) for key in keys]
        if workers > 1 and len(args) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(_solve_one, args))
        else:
            results = []
            best_hi = None
            for key, arg in zip(keys, args):
                sub = arg[0]
                # a subgame whose own security value already matches the best
                # upper bound cannot win the (strict, first-wins) minimum
                if best_hi is not None and not _goes_exact(sub, numeric):
                    sec = maxmin_value(sub).value
                    if QuadNumber(sec).cmp(best_hi) >= 0:
                        results.append(None)
                        continue
                sol = _solve_one(arg)
                results.append(sol)
                up = _upper(sol.value)
                if best_hi is None or up.cmp(best_hi) < 0:
                    best_hi = up
        for key, sol in zip(keys, results):
            if sol is None:
                solved.setdefault(key, None)
            else:
                solved[key] = sol

    solve_all(list(groups), tol)

    def best_of():
        best = None
        for a, b, key in order:
            sol = solved[key]
            if sol is None:
                continue
            if best is None or _upper(sol.value).cmp(_upper(best[2].value)) < 0:
                best = (a, b, sol)
        return best

    def low_of():
        lows = [_lower(s.value) for s in solved.values() if s is not None]
        return min(lows)

    a, b, sol = best_of()
    hi = _upper(sol.value)
    # skipped subgames have security value >= hi, so they never go below it
    lo = low_of()
    if lo.cmp(hi) > 0:
        lo = hi
    for attempt in range(refinements):
        if not numeric and is_algebraic(sol.value) and lo.cmp(hi) >= 0:
            break
        if _gap(lo, hi) <= tol:
            break
        ambiguous = [
            key for key, s in solved.items()
            if s is not None and isinstance(s.value, Bracket) and _lower(s.value).cmp(hi) < 0
        ]
        if not ambiguous:
            break
        solve_all(ambiguous, tol / 1000 ** (attempt + 1))
        a, b, sol = best_of()
        hi = _upper(sol.value)
        lo = low_of()
        if lo.cmp(hi) > 0:
            lo = hi

    full = [tuple(keep2[i] for i in a), tuple(keep3[i] for i in b)]
    profile, symbolic = _lift(sol, game.dims[1:], full)
    stats = {"pairs": pairs, "subgames": len(groups), "skipped": sum(v is None for v in solved.values())}
    method = "support-enum/" + sol.method
    if not numeric and is_algebraic(sol.value) and lo.cmp(hi) >= 0:
        return SubgameSolution(sol.value, profile, symbolic, method=method, supports=tuple(full), stats=stats)
    hi_q = hi.a if hi.is_rational else hi.bounds()[1]
    lo_q = lo.a if lo.is_rational else lo.bounds()[0]
    # the security value is a lower bound on the minmax value too
    lo_q = min(max(lo_q, floor), hi_q)
    unconverged = hi_q - lo_q > tol
    return SubgameSolution(Bracket(lo_q, hi_q, unconverged=unconverged), profile, symbolic,
                           method=method, unconverged=unconverged, supports=tuple(full), stats=stats)


class Decision(NamedTuple):
    answer: str  # "yes", "no" or "unknown"
    value: GameValue
    solution: SubgameSolution


def decide_minmax_leq(game: PayoffTensor, alpha, mode: str = "exact", **kwargs) -> Decision:
    """Is the minmax value at most ``alpha``?  ``unknown`` only for straddling brackets."""
    alpha = Fraction(alpha)
    sol = minmax_support_enum(game, mode=mode, **kwargs)
    v = sol.value
    if isinstance(v, Bracket):
        if v.hi <= alpha:
            ans = "yes"
        elif v.lo > alpha:
            ans = "no"
        else:
            ans = "unknown"
    else:
        ans = "yes" if compare_to(v, alpha) <= 0 else "no"
    return Decision(ans, v, sol)
