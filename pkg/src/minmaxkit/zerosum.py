"""Exact two-player zero-sum games by rational simplex pivoting.

The row player maximizes, the column player minimizes.  After shifting the
matrix to be strictly positive, the column player's problem is

    maximize sum(y)  subject to  A y <= 1,  y >= 0

whose slack basis is feasible, so no phase one is needed.  The value is
``1/sum(y)`` (shifted back), the column strategy is ``y/sum(y)``, and the
row strategy comes from the optimal dual prices.  Pivots use Bland's rule,
so the method terminates and returns a *basic* column solution; such a
solution has at most ``k`` positive entries for a ``k``-row matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import BudgetError, ValidationError
from .game import MAX_OUTCOMES, MixedStrategy, PayoffTensor, _frac


class SimplexError(RuntimeError):
    """Internal failure of the pivoting loop (should never happen for games)."""


@dataclass(frozen=True)
class ZeroSumSolution:
    value: Fraction
    row_strategy: MixedStrategy
    col_strategy: MixedStrategy

    @property
    def col_support_size(self) -> int:
        return len(self.col_strategy.support)

    def verify(self, matrix: Sequence[Sequence[Fraction]]) -> bool:
        """Check both guarantees exactly."""
        x, y = self.row_strategy.probs, self.col_strategy.probs
        k, n = len(matrix), len(matrix[0])
        row_ok = all(sum(x[i] * matrix[i][j] for i in range(k)) >= self.value for j in range(n))
        col_ok = all(sum(matrix[i][j] * y[j] for j in range(n)) <= self.value for i in range(k))
        return row_ok and col_ok


def _as_matrix(matrix) -> list[list[Fraction]]:
    rows = [[_frac(v) for v in row] for row in matrix]
    if not rows or not rows[0]:
        raise ValidationError("matrix must have at least one row and one column")
    n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise ValidationError("ragged matrix")
    return rows


def zs_value(matrix) -> ZeroSumSolution:
    """Value and basic optimal strategies of a zero-sum matrix game."""
    a = _as_matrix(matrix)
    k, n = len(a), len(a[0])
    shift = min(min(r) for r in a) - 1
    # tableau rows: k constraints over n structural + k slack columns, rhs last
    tab = [[a[i][j] - shift for j in range(n)] + [Fraction(int(i == s)) for s in range(k)] + [Fraction(1)]
           for i in range(k)]
    # objective row holds reduced costs c_j - z_j for maximize sum(y)
    obj = [Fraction(1)] * n + [Fraction(0)] * k + [Fraction(0)]
    basis = [n + i for i in range(k)]
    width = n + k

    for _ in range(10_000):
        enter = next((j for j in range(width) if obj[j] > 0), None)
        if enter is None:
            break
        best = None
        for i in range(k):
            coef = tab[i][enter]
            if coef > 0:
                ratio = tab[i][-1] / coef
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            raise SimplexError("unbounded column LP; matrix was not shifted positive")
        r = best[1]
        piv = tab[r][enter]
        prow = [v / piv for v in tab[r]]
        tab[r] = prow
        for i in range(k):
            if i != r and tab[i][enter]:
                f = tab[i][enter]
                tab[i] = [v - f * w for v, w in zip(tab[i], prow)]
        f = obj[enter]
        if f:
            obj = [v - f * w for v, w in zip(obj, prow)]
        basis[r] = enter
    else:
        raise SimplexError("pivot limit reached")

    y = [Fraction(0)] * n
    for i, b in enumerate(basis):
        if b < n:
            y[b] = tab[i][-1]
    total = sum(y)
    if total <= 0:
        raise SimplexError("degenerate optimum with zero objective")
    # dual prices are minus the reduced costs of the slack columns
    x = [-obj[n + i] for i in range(k)]
    xsum = sum(x)
    if xsum != total:
        raise SimplexError(f"duality gap in final tableau: {xsum} vs {total}")
    value = 1 / total + shift
    return ZeroSumSolution(
        value,
        MixedStrategy(tuple(v / xsum for v in x)),
        MixedStrategy(tuple(v / total for v in y)),
    )


def maxmin_value(game: PayoffTensor, budget: int = MAX_OUTCOMES) -> ZeroSumSolution:
    """Player 1's security value against pure opponent profiles.

    The returned column strategy lives on the flattened joint actions of
    players 2..l (row-major), which is how the opponents are treated when
    they may correlate.
    """
    cols = math.prod(game.dims[1:])
    if cols > budget:
        raise BudgetError("maxmin matrix columns", cols, budget)
    return zs_value([list(game.player1_slice(a)) for a in range(game.dims[0])])
