"""Certified numeric minmax brackets for three-player games.

Upper bounds come from explicit bully profiles, evaluated exactly.  Lower
bounds come from branch and bound over the simplex of one bully (the one
with fewer actions).  For a fixed strategy ``s2`` of that bully the
remaining problem is a zero-sum matrix game ``M(s2)``, solved exactly.  On
a simplex cell with vertices ``V_t`` and optimal Player 1 strategies
``x_t``, Player 1 can answer ``sum_t l_t V_t`` with ``sum_t l_t x_t``; the
resulting payoff is a quadratic form in the barycentric weights ``l`` whose
minimum over the cell is at least the smallest diagonal or averaged
off-diagonal coefficient.  That bound is exact at the vertices and loses
only second-order terms inside the cell.  It is combined with the best
single Player 1 strategy for the whole cell (an LP over the vertex
matrices), which is tight on regions where the value is flat.
"""

from __future__ import annotations

import heapq
import itertools
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.optimize import linprog

from .bilinear import SubgameSolution
from .errors import ValidationError
from .game import BullyProfile, MixedStrategy, PayoffTensor, best_response_value
from .values import Bracket
from .zerosum import maxmin_value, zs_value

SUBGAME_CAP = 6
DEFAULT_MAX_NODES = 20_000


def _as_array(game: PayoffTensor) -> np.ndarray:
    return np.array([float(u) for u in game.payoffs]).reshape(game.dims)


def _lp_min_max(m: np.ndarray) -> tuple[np.ndarray, float]:
    """Column strategy minimizing the row maximum of ``m @ y`` (floats)."""
    k, n = m.shape
    c = np.zeros(n + 1)
    c[-1] = 1.0
    a_ub = np.hstack([m, -np.ones((k, 1))])
    a_eq = np.zeros((1, n + 1))
    a_eq[0, :n] = 1.0
    res = linprog(
        c, A_ub=a_ub, b_ub=np.zeros(k), A_eq=a_eq, b_eq=[1.0],
        bounds=[(0, None)] * n + [(None, None)], method="highs",
    )
    if res.status != 0:
        raise RuntimeError(f"LP failed: {res.message}")
    y = np.clip(res.x[:n], 0, None)
    return y / y.sum(), float(res.x[-1])


def rationalize(probs: Sequence[float], max_den: int = 2**40) -> MixedStrategy:
    """Nearby exact probability vector (non-negative, summing to one)."""
    fr = [Fraction(max(0.0, float(p))).limit_denominator(max_den) for p in probs]
    total = sum(fr)
    if total == 0:
        fr = [Fraction(1)] + [Fraction(0)] * (len(fr) - 1)
        total = Fraction(1)
    return MixedStrategy(tuple(f / total for f in fr))


def alternating_descent(u: np.ndarray, starts: int = 8, seed: int = 0, max_rounds: int = 100):
    """Multi-start alternating LP descent for three-player ``u`` (floats).

    Fixing one bully turns the problem into an LP for the other; the two
    LPs are alternated until the value stops improving.  Returns the best
    ``(s2, s3, value)`` found.
    """
    k, n2, n3 = u.shape
    rng = np.random.default_rng(seed)
    inits = [np.full(n2, 1.0 / n2)] + [np.eye(n2)[j] for j in range(n2)]
    inits += [rng.dirichlet(np.ones(n2)) for _ in range(max(0, starts - len(inits)))]
    best = None
    for s2 in inits[: max(starts, 1 + n2)]:
        s3, v = _lp_min_max(np.einsum("ijk,j->ik", u, s2))
        for _ in range(max_rounds):
            s2_new, v2 = _lp_min_max(np.einsum("ijk,k->ij", u, s3))
            s3_new, v3 = _lp_min_max(np.einsum("ijk,j->ik", u, s2_new))
            if v3 > v - 1e-13:
                break
            s2, s3, v = s2_new, s3_new, v3
        if best is None or v < best[2]:
            best = (s2, s3, v)
    return best


def descent_minmax(game: PayoffTensor, starts: int = 16, seed: int = 0) -> SubgameSolution:
    """Heuristic minmax estimate for three-player games of any size.

    The upper end is the exact best-response value of the profile found by
    alternating descent; the lower end is Player 1's (exact) maxmin value,
    which is always a valid lower bound.  The bracket is flagged
    ``unconverged`` unless the two meet.
    """
    if game.num_players != 3:
        raise ValidationError("descent needs a three-player game")
    s2, s3, _ = alternating_descent(_as_array(game), starts=starts, seed=seed)
    profile = BullyProfile.of(rationalize(s2), rationalize(s3))
    hi = best_response_value(game, profile).value
    lo = min(maxmin_value(game).value, hi)
    return SubgameSolution(Bracket(lo, hi, unconverged=lo < hi), profile, method="descent",
                           unconverged=lo < hi)


class _Evaluator:
    """Exact zero-sum solutions of ``M(s2) = sum_j s2[j] * U[:, j, :]``, cached per vertex."""

    def __init__(self, game: PayoffTensor):
        self.k, self.n2, self.n3 = game.dims
        n2, n3 = self.n2, self.n3
        self.slabs = [
            [list(game.payoffs[(i * n2 + j) * n3 : (i * n2 + j + 1) * n3]) for i in range(self.k)]
            for j in range(n2)
        ]
        self.cache: dict = {}

    def matrix(self, s2: tuple) -> list[list[Fraction]]:
        m = [[Fraction(0)] * self.n3 for _ in range(self.k)]
        for j, w in enumerate(s2):
            if w:
                slab = self.slabs[j]
                for i in range(self.k):
                    row, src = m[i], slab[i]
                    for l in range(self.n3):
                        row[l] += w * src[l]
        return m

    def solve(self, s2: tuple):
        hit = self.cache.get(s2)
        if hit is None:
            mat = self.matrix(s2)
            hit = (mat, zs_value(mat))
            self.cache[s2] = hit
        return hit


def _row_times(x: Sequence[Fraction], mat: list[list[Fraction]]) -> list[Fraction]:
    n = len(mat[0])
    out = [Fraction(0)] * n
    for xi, row in zip(x, mat):
        if xi:
            for l in range(n):
                out[l] += xi * row[l]
    return out


def _cell_lower_bound(ev: _Evaluator, verts: Sequence[tuple]) -> Fraction:
    sols = [ev.solve(v) for v in verts]
    xs = [s.row_strategy.probs for _, s in sols]
    mats = [m for m, _ in sols]
    m = len(verts)
    r = [[_row_times(xs[t], mats[s]) for s in range(m)] for t in range(m)]
    second = min(
        min(
            min(r[t][t][l] for t in range(m)),
            min(((r[t][s][l] + r[s][t][l]) / 2 for t, s in itertools.combinations(range(m), 2)),
                default=r[0][0][l]),
        )
        for l in range(ev.n3)
    )
    # one Player 1 strategy for the whole cell: its worst column payoff is
    # concave in s2, so checking the vertices is enough
    stacked = [[x for s in range(m) for x in mats[s][i]] for i in range(ev.k)]
    first = zs_value(stacked).value
    return max(first, second)


def _longest_edge(verts: Sequence[tuple]) -> tuple[int, int]:
    best, pair = Fraction(-1), (0, 1)
    for a, b in itertools.combinations(range(len(verts)), 2):
        d = sum(abs(x - y) for x, y in zip(verts[a], verts[b]))
        if d > best:
            best, pair = d, (a, b)
    return pair


def solve_subgame_numeric(
    sub: PayoffTensor,
    tol=Fraction(1, 10**9),
    seed: int = 0,
    max_nodes: int = DEFAULT_MAX_NODES,
    cap: int = SUBGAME_CAP,
) -> SubgameSolution:
    """Bracket of width at most ``tol`` around the minmax value of a small game.

    If the node budget runs out first, the wider bracket reached so far is
    returned with ``unconverged=True``.
    """
    if sub.num_players != 3:
        raise ValidationError("numeric subgame solver needs a three-player game")
    k, n2, n3 = sub.dims
    if max(n2, n3) > cap:
        raise ValidationError(f"subgame dims {list(sub.dims)} exceed the cap {cap}")
    tol = Fraction(tol)
    if tol <= 0:
        raise ValidationError("tolerance must be positive")

    swapped = n3 < n2
    game = sub.permute_players((0, 2, 1)) if swapped else sub
    ev = _Evaluator(game)
    m = game.dims[1]

    def finish(lo, hi, s2, s3, unconverged, nodes):
        strategies = (s3, s2) if swapped else (s2, s3)
        profile = BullyProfile(strategies)
        return SubgameSolution(
            Bracket(min(lo, hi), hi, unconverged=unconverged), profile,
            method="numeric-bnb", unconverged=unconverged, stats={"nodes": nodes},
        )

    def vertex_profile(v):
        _, sol = ev.solve(v)
        return MixedStrategy(v), sol.col_strategy, sol.value

    root = tuple(tuple(Fraction(int(i == j)) for i in range(m)) for j in range(m))
    hi, best_s2, best_s3 = None, None, None
    for v in root:
        s2, s3, val = vertex_profile(v)
        if hi is None or val < hi:
            hi, best_s2, best_s3 = val, s2, s3
    if m == 1:
        return finish(hi, hi, best_s2, best_s3, False, 0)

    # seed the incumbent with a descent profile
    d2, d3, _ = alternating_descent(_as_array(game), starts=4, seed=seed)
    p2, p3 = rationalize(d2), rationalize(d3)
    dval = best_response_value(game, BullyProfile.of(p2, p3)).value
    if dval < hi:
        hi, best_s2, best_s3 = dval, p2, p3

    counter = itertools.count()
    heap = [(_cell_lower_bound(ev, root), next(counter), root)]
    pruned_min = None
    nodes = 0
    while heap:
        lb, _, verts = heapq.heappop(heap)
        lo = lb if pruned_min is None else min(lb, pruned_min)
        if hi - lo <= tol:
            return finish(lo, hi, best_s2, best_s3, False, nodes)
        if nodes >= max_nodes:
            heapq.heappush(heap, (lb, next(counter), verts))
            break
        nodes += 1
        a, b = _longest_edge(verts)
        mid = tuple((x + y) / 2 for x, y in zip(verts[a], verts[b]))
        s2, s3, val = vertex_profile(mid)
        if val < hi:
            hi, best_s2, best_s3 = val, s2, s3
        for drop in (a, b):
            child = tuple(mid if i == drop else v for i, v in enumerate(verts))
            clb = _cell_lower_bound(ev, child)
            if clb >= hi - tol / 2:
                pruned_min = clb if pruned_min is None else min(pruned_min, clb)
            else:
                heapq.heappush(heap, (clb, next(counter), child))
    lo_candidates = [h[0] for h in heap] + ([pruned_min] if pruned_min is not None else [])
    lo = min(lo_candidates) if lo_candidates else hi
    return finish(lo, hi, best_s2, best_s3, hi - lo > tol, nodes)
