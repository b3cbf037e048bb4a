"""Threat values when one bully has few strategies, and whole threat points.

If Player 2 has only ``k`` actions, fix a mixed strategy for Player 2 and
what remains is a zero-sum game between Player 1 and Player 3, solvable by
LP.  Trying every point of a fine lattice on Player 2's simplex gives the
threat value up to the lattice spacing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import BudgetError, ValidationError
from .exact_two import solve_two_by
from .game import BullyProfile, MixedStrategy, PayoffTensor, affine_transform, normalize_unit
from .numeric import SUBGAME_CAP
from .oracle import GRID_BUDGET, composition_count, compositions, oracle_minmax
from .support_enum import minmax_support_enum
from .values import Bracket, Exact, GameValue, QuadIrr
from .zerosum import zs_value

LATTICE_BUDGET = 10**5
SUPPORT_PAIRS_FOR_THREAT = 2000


def simplex_lattice(k: int, r: int, budget: int = LATTICE_BUDGET) -> list[MixedStrategy]:
    """Probability vectors on ``k`` actions with denominator ``r``, lexicographically."""
    if k < 1 or r < 1:
        raise ValidationError(f"need k >= 1 and r >= 1, got k={k}, r={r}")
    count = composition_count(k, r)
    if count > budget:
        raise BudgetError("lattice points", count, budget)
    return [MixedStrategy(tuple(Fraction(int(c), r) for c in row)) for row in compositions(k, r)]


def lattice_resolution(k: int, epsilon) -> int:
    """Smallest ``r`` with ``2(k-1)/r <= epsilon``."""
    eps = Fraction(epsilon)
    if eps <= 0:
        raise ValidationError(f"epsilon must be positive, got {eps}")
    return max(1, math.ceil(2 * (k - 1) / eps))


@dataclass(frozen=True)
class ThreatResult:
    value: Bracket
    profile: BullyProfile
    resolution: int


def bully_threat_value(
    game: PayoffTensor, epsilon, bully: int = 2, budget: int = LATTICE_BUDGET
) -> ThreatResult:
    """Bracket of width ``epsilon * (u_max - u_min)`` from a lattice on one bully.

    ``bully`` (2 or 3) names the player whose simplex is discretized.
    """
    if game.num_players != 3:
        raise ValidationError(f"needs a three-player game, got {game.num_players}")
    if bully not in (2, 3):
        raise ValidationError(f"bully must be 2 or 3, got {bully}")
    umin, umax = game.payoff_range()
    if umin < 0 or umax > 1:
        raise ValidationError("payoffs must lie in [0, 1]; rescale with affine_transform first")
    g = game if bully == 2 else game.permute_players((0, 2, 1))
    n1, k, n3 = g.dims
    r = lattice_resolution(k, epsilon)
    lattice = simplex_lattice(k, r, budget)
    slabs = [[g.payoffs[(a1 * k + a2) * n3 : (a1 * k + a2 + 1) * n3] for a1 in range(n1)] for a2 in range(k)]

    best = None
    for s2 in lattice:
        mat = [[Fraction(0)] * n3 for _ in range(n1)]
        for a2, w in enumerate(s2.probs):
            if w:
                for a1 in range(n1):
                    row, src = mat[a1], slabs[a2][a1]
                    for a3 in range(n3):
                        row[a3] += w * src[a3]
        sol = zs_value(mat)
        if best is None or sol.value < best[0]:
            best = (sol.value, s2, sol.col_strategy)
    v, s2, s3 = best
    lo = max(umin, v - Fraction(epsilon) * (umax - umin))
    profile = BullyProfile.of(s2, s3) if bully == 2 else BullyProfile.of(s3, s2)
    return ThreatResult(Bracket(lo, v), profile, r)


@dataclass(frozen=True)
class ThreatEntry:
    player: int
    value: Optional[GameValue]
    method: str
    profile: Optional[BullyProfile] = None
    note: str = ""


def _view(tensor: PayoffTensor, player: int) -> PayoffTensor:
    # put ``player`` first; the other two keep their relative order
    order = [player - 1] + [p for p in range(3) if p != player - 1]
    return tensor.permute_players(order)


def map_back(v: GameValue, scale: Fraction, shift: Fraction) -> GameValue:
    if isinstance(v, Exact):
        return Exact((v.value - shift) / scale)
    if isinstance(v, QuadIrr):
        return QuadIrr((v.a - shift) / scale, v.b / scale, v.d)
    return Bracket((v.lo - shift) / scale, (v.hi - shift) / scale, v.unconverged)


def _try_exact_two(g: PayoffTensor):
    vals = g.distinct_payoffs()
    if g.dims[0] != 2 or len(vals) > 2:
        return None
    lo = vals[0]
    hi = vals[-1] if len(vals) == 2 else lo + 1
    scale = 1 / (hi - lo)
    sol = solve_two_by(affine_transform(g, scale, -lo * scale).game)
    return map_back(sol.value, scale, -lo * scale), sol.profile, "exact-two"


def _try_support_enum(g: PayoffTensor, tol):
    k = len(set(g.player1_slice(a) for a in range(g.dims[0])))
    if k > SUBGAME_CAP:
        return None
    sol = minmax_support_enum(g, mode="exact", tol=tol, budget=SUPPORT_PAIRS_FOR_THREAT)
    return sol.value, sol.profile, "support-enum"


def _try_bully_threat(g: PayoffTensor, epsilon, small: Optional[int]):
    _, n2, n3 = g.dims
    if small is None:
        small = 2 if n2 <= n3 else 3
    if g.dims[small - 1] > SUBGAME_CAP:
        return None
    norm = normalize_unit(g)
    res = bully_threat_value(norm.game, epsilon, bully=small)
    return map_back(res.value, norm.scale, norm.shift), res.profile, f"bully-threat(player {small})"


def _try_oracle(g: PayoffTensor):
    r = 1
    while math.prod(composition_count(n, r + 1) for n in g.dims[1:]) <= GRID_BUDGET and r < 1000:
        r += 1
    res = oracle_minmax(g, r)
    return res.bracket, res.witness, f"oracle(r={r})"


def threat_point(
    game: PayoffTensor,
    epsilon,
    payoffs_p2: Optional[Sequence] = None,
    payoffs_p3: Optional[Sequence] = None,
    small_player: Optional[int] = None,
) -> list[ThreatEntry]:
    """Minmax value of each of the three players.

    ``game`` carries Player 1's utility; the other players' utilities are
    flat arrays in the same layout.  ``small_player`` (1, 2 or 3) names the
    player whose simplex may be discretized; by default the bully with
    fewer actions is used.  Entries that no solver can handle are marked
    ``unsupported`` instead of failing the whole call.
    """
    if game.num_players != 3:
        raise ValidationError(f"threat points need three players, got {game.num_players}")
    eps = Fraction(epsilon)
    if eps <= 0:
        raise ValidationError(f"epsilon must be positive, got {eps}")
    utilities = [game.payoffs, payoffs_p2, payoffs_p3]
    out = []
    for player, u in enumerate(utilities, start=1):
        if u is None:
            out.append(ThreatEntry(player, None, "missing", note=f"no utility given for player {player}"))
            continue
        g = _view(PayoffTensor(game.dims, tuple(u)), player)
        small = None
        if small_player is not None and small_player != player:
            others = [p for p in (1, 2, 3) if p != player]
            small = 2 + others.index(small_player)
        attempts = [
            lambda: _try_exact_two(g),
            lambda: _try_support_enum(g, eps),
            lambda: _try_bully_threat(g, eps, small),
            lambda: _try_oracle(g),
        ]
        entry = None
        notes = []
        for attempt in attempts:
            try:
                res = attempt()
            except (BudgetError, ValidationError) as exc:
                notes.append(str(exc))
                continue
            if res is not None:
                value, profile, method = res
                entry = ThreatEntry(player, value, method, profile)
                break
        out.append(entry or ThreatEntry(player, None, "unsupported", note="; ".join(notes)))
    return out
