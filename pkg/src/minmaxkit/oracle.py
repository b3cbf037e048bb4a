"""Brute-force minmax bracket by grid search over the bullies' simplices.

Every bully strategy with probabilities in ``(1/r) * Z`` is tried, Player 1
best-responds, and the smallest best-response value is the upper end of
the bracket.  Multilinearity of the expected payoff bounds how much the
true minimum can undercut the grid minimum, which gives the lower end.

The search runs in exact integer arithmetic: payoffs are scaled to a common
denominator and lattice points are stored as integer count vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import BudgetError, ValidationError
from .game import BullyProfile, MixedStrategy, PayoffTensor, best_response_value
from .values import Bracket

GRID_BUDGET = 10**7
_CHUNK_CELLS = 1 << 20


def composition_count(n: int, r: int) -> int:
    return math.comb(r + n - 1, n - 1)


def compositions(n: int, r: int) -> np.ndarray:
    """All ways to write ``r`` as an ordered sum of ``n`` non-negative parts.

    Rows come in lexicographic order of the count tuples.
    """
    if n < 1 or r < 0:
        raise ValidationError(f"bad composition request n={n}, r={r}")
    out = np.empty((composition_count(n, r), n), dtype=np.int64)
    row = 0
    cur = [0] * n

    def rec(pos: int, left: int) -> None:
        nonlocal row
        if pos == n - 1:
            cur[pos] = left
            out[row] = cur
            row += 1
            return
        for c in range(left + 1):
            cur[pos] = c
            rec(pos + 1, left - c)

    rec(0, r)
    return out


def _integer_payoffs(game: PayoffTensor) -> tuple[list[int], int]:
    den = 1
    for u in game.payoffs:
        den = math.lcm(den, u.denominator)
    return [int(u * den) for u in game.payoffs], den


def lattice_min(
    game: PayoffTensor, counts: Sequence[np.ndarray], totals: Sequence[int]
) -> tuple[Fraction, tuple[int, ...]]:
    """Minimum best-response value over the product of lattice point sets.

    ``counts[j]`` holds one integer count vector per row for bully ``j+2``;
    each row sums to ``totals[j]``.  Returns the minimum and the row index
    of every bully at the first (row-major) minimizer.
    """
    if len(counts) != game.num_players - 1:
        raise ValidationError("need one lattice per bully")
    ints, den = _integer_payoffs(game)
    scale = den * math.prod(totals)
    bound = max(abs(v) for v in ints) * math.prod(totals) * game.dims[0]
    dtype = np.int64 if bound < 2**62 else object
    tensor = np.array(ints, dtype=dtype).reshape(game.dims)
    mats = [np.asarray(c).astype(dtype) for c in counts]

    sizes = [m.shape[0] for m in mats]
    rest = math.prod(sizes[1:])
    chunk = max(1, _CHUNK_CELLS // max(1, rest * game.dims[0]))
    best_val = None
    best_idx = None
    for start in range(0, sizes[0], chunk):
        block = mats[0][start : start + chunk]
        # axis 1 is bully 2; contract it with the chunk of lattice rows
        t = np.moveaxis(np.tensordot(tensor, block, axes=([1], [1])), -1, 1)
        for pos, m in enumerate(mats[1:], start=2):
            t = np.moveaxis(np.tensordot(t, m, axes=([pos], [1])), -1, pos)
        br = t.max(axis=0)
        flat = br.reshape(-1)
        i = int(np.argmin(flat))
        v = flat[i]
        if best_val is None or v < best_val:
            best_val = v
            local = np.unravel_index(i, br.shape)
            best_idx = (int(local[0]) + start,) + tuple(int(x) for x in local[1:])
    return Fraction(int(best_val), scale), best_idx


@dataclass(frozen=True)
class OracleResult:
    bracket: Bracket
    witness: BullyProfile
    resolution: int


def lattice_profile(counts: Sequence[np.ndarray], totals: Sequence[int], idx: Sequence[int]) -> BullyProfile:
    return BullyProfile(
        tuple(
            MixedStrategy(tuple(Fraction(int(c), t) for c in m[i]))
            for m, t, i in zip(counts, totals, idx)
        )
    )


def oracle_minmax(game: PayoffTensor, resolution: int, budget: int = GRID_BUDGET) -> OracleResult:
    """Certified bracket on the minmax value from the resolution-``r`` grid."""
    r = int(resolution)
    if r < 1:
        raise ValidationError("resolution must be at least 1")
    bullies = game.dims[1:]
    points = math.prod(composition_count(n, r) for n in bullies)
    if points > budget:
        raise BudgetError("oracle grid points", points, budget)
    counts = [compositions(n, r) for n in bullies]
    totals = [r] * len(bullies)
    hi, idx = lattice_min(game, counts, totals)
    witness = lattice_profile(counts, totals, idx)
    assert best_response_value(game, witness).value == hi
    umin, umax = game.payoff_range()
    n_max = max(bullies)
    slack = (len(bullies)) * Fraction(2 * (n_max - 1), r) * (umax - umin)
    lo = max(umin, hi - slack)
    return OracleResult(Bracket(lo, hi), witness, r)
