"""Exact minmax of subgames where each bully has (at most) two actions.

With bullies playing ``(p, 1-p)`` and ``(q, 1-q)``, Player 1's action ``i``
earns the bilinear function

    f_i(p, q) = alpha_i + beta_i*p + gamma_i*q + delta_i*p*q

and the minmax value is ``min over [0,1]^2 of max_i f_i``.  The minimum is
attained at a critical point of some stratum of the arrangement of the
``f_i``: a corner; a breakpoint on an edge; a saddle of a single ``f_i``;
a critical point of ``f_i`` along a tie curve ``f_i = f_j`` (where the
gradients are parallel, an affine condition); a singular point of a tie
curve; or a three-way tie.  Tie curves are linear in ``q``, so eliminating
``q`` never leaves more than a quadratic in ``p`` and every candidate lies
in some ``Q(sqrt(d))``.  All candidates are evaluated exactly and the
smallest value wins.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import ValidationError
from .game import BullyProfile, MixedStrategy, PayoffTensor, replicate
from .polyroots import quadratic_roots
from .values import Bracket, GameValue, QuadNumber, value_of

ZERO, ONE = Fraction(0), Fraction(1)


@dataclass(frozen=True)
class SubgameSolution:
    """Value of a (possibly support-restricted) subgame with a witness profile.

    ``profile`` is always rational.  For quadratic-irrational values the
    exact profile is kept in ``symbolic_profile`` as field elements.
    """

    value: GameValue
    profile: BullyProfile
    symbolic_profile: Optional[tuple[tuple[QuadNumber, ...], ...]] = None
    method: str = ""
    unconverged: bool = False
    supports: Optional[tuple[tuple[int, ...], ...]] = None
    stats: dict = field(default_factory=dict, compare=False)


def bilinear_coefficients(sub: PayoffTensor) -> list[tuple[Fraction, Fraction, Fraction, Fraction]]:
    """``(alpha, beta, gamma, delta)`` for every Player 1 action of a ``k x 2 x 2`` game."""
    out = []
    for i in range(sub.dims[0]):
        u00, u01, u10, u11 = sub.player1_slice(i)
        out.append((u11, u01 - u11, u10 - u11, u00 - u01 - u10 + u11))
    return out


def _f(c, p, q):
    a, b, g, d = c
    return a + b * p + g * q + d * p * q


def _candidates(coeffs) -> list[tuple[QuadNumber, QuadNumber]]:
    pts: list[tuple] = []
    add = pts.append
    k = len(coeffs)
    for p0, q0 in itertools.product((ZERO, ONE), repeat=2):
        add((p0, q0))

    # edges: every f_i is affine in the free coordinate
    for fixed in (ZERO, ONE):
        along_q = [(a + b * fixed, g + d * fixed) for a, b, g, d in coeffs]
        along_p = [(a + g * fixed, b + d * fixed) for a, b, g, d in coeffs]
        for lines, make in ((along_q, lambda t: (fixed, t)), (along_p, lambda t: (t, fixed))):
            for (a1, s1), (a2, s2) in itertools.combinations(lines, 2):
                if s1 != s2:
                    add(make((a2 - a1) / (s1 - s2)))

    for a, b, g, d in coeffs:
        if d:
            add((-g / d, -b / d))

    diffs = {}
    for i, j in itertools.combinations(range(k), 2):
        ci, cj = coeffs[i], coeffs[j]
        diff = tuple(x - y for x, y in zip(ci, cj))
        diffs[i, j] = diff
        da, db, dg, dd = diff
        if dd:
            add((-dg / dd, -db / dd))
        _, bi, gi, di = ci
        _, bj, gj, dj = cj
        l0 = bi * gj - bj * gi
        lp = bi * dj - bj * di
        lq = di * gj - dj * gi
        if lq:
            m0, m1 = -l0 / lq, -lp / lq
            poly = [da + dg * m0, db + dg * m1 + dd * m0, dd * m1]
            for p in quadratic_roots(poly):
                add((p, m0 + m1 * p))
        elif lp:
            p = -l0 / lp
            c0, c1 = da + db * p, dg + dd * p
            if c1:
                add((p, -c0 / c1))

    for i, j, l in itertools.combinations(range(k), 3):
        a1, b1, c1, d1 = diffs[i, j]
        a2, b2, c2, d2 = diffs[i, l]
        # B_m = P_m(p) + Q_m(p) q with P_m = a_m + b_m p, Q_m = c_m + d_m p
        res = [a1 * c2 - a2 * c1, a1 * d2 + b1 * c2 - a2 * d1 - b2 * c1, b1 * d2 - b2 * d1]
        if any(res):
            roots = quadratic_roots(res)
        else:
            roots = quadratic_roots([c1, d1]) + quadratic_roots([c2, d2])
        for p in roots:
            q1, q2 = c1 + d1 * p, c2 + d2 * p
            if q1 != 0:
                add((p, -(a1 + b1 * p) / q1))
            elif q2 != 0:
                add((p, -(a2 + b2 * p) / q2))
    return [(QuadNumber.of(p), QuadNumber.of(q)) for p, q in pts]


def _in_unit(x: QuadNumber) -> bool:
    return x.sign() >= 0 and (1 - x).sign() >= 0


def _as_two_by_two(sub: PayoffTensor) -> tuple[PayoffTensor, tuple[int, int]]:
    if sub.num_players != 3:
        raise ValidationError("bilinear subgame solver needs a three-player game")
    k, n2, n3 = sub.dims
    if n2 > 2 or n3 > 2:
        raise ValidationError(f"bullies must have at most two actions, got dims {list(sub.dims)}")
    if (n2, n3) == (2, 2):
        return sub, (2, 2)
    return replicate(sub, (k, 2, 2)), (n2, n3)


def minimize_max_bilinear(coeffs) -> tuple[QuadNumber, QuadNumber, QuadNumber]:
    """Exact ``min_{p,q in [0,1]} max_i f_i(p, q)``; returns ``(value, p, q)``."""
    scored = []
    seen = set()
    for p, q in _candidates(coeffs):
        if (p, q) in seen or not (_in_unit(p) and _in_unit(q)):
            continue
        seen.add((p, q))
        vals = [_f(c, p, q) for c in coeffs]
        best = vals[0]
        for v in vals[1:]:
            if v.cmp(best) > 0:
                best = v
        scored.append((float(best), best, p, q))
    fmin = min(s[0] for s in scored)
    near = [s for s in scored if s[0] <= fmin + 1e-9 * (1 + abs(fmin))]
    win = near[0]
    for s in near[1:]:
        if s[1].cmp(win[1]) < 0:
            win = s
    return win[1], win[2], win[3]


def _rational_strategy(p: QuadNumber) -> MixedStrategy:
    x = min(max(p.approx(80), ZERO), ONE)
    return MixedStrategy((x, 1 - x))


def _shrink(strategy: MixedStrategy, n: int) -> MixedStrategy:
    # undo replication of a single action to two copies
    return strategy if n == 2 else MixedStrategy((ONE,))


def solve_subgame_exact2(sub: PayoffTensor) -> SubgameSolution:
    """Exact minmax value of a ``k x 2 x 2`` game (bullies may also have one action)."""
    game, (n2, n3) = _as_two_by_two(sub)
    value, p, q = minimize_max_bilinear(bilinear_coefficients(game))
    profile = BullyProfile.of(_shrink(_rational_strategy(p), n2), _shrink(_rational_strategy(q), n3))
    symbolic = (
        (p, 1 - p) if n2 == 2 else (QuadNumber(ONE),),
        (q, 1 - q) if n3 == 2 else (QuadNumber(ONE),),
    )
    return SubgameSolution(value_of(value), profile, symbolic, method="exact-bilinear")


def symbolic_payoffs(sub: PayoffTensor, symbolic: Sequence[Sequence[QuadNumber]]) -> list[QuadNumber]:
    """Player 1's expected payoffs at a field-valued profile, computed exactly."""
    k, n2, n3 = sub.dims
    s2, s3 = symbolic
    out = []
    for i in range(k):
        sl = sub.player1_slice(i)
        acc = QuadNumber(ZERO)
        for j in range(n2):
            for l in range(n3):
                if sl[j * n3 + l]:
                    acc = acc + s2[j] * s3[l] * sl[j * n3 + l]
        out.append(acc)
    return out


def certificate_holds(sub: PayoffTensor, sol: SubgameSolution) -> bool:
    """Tied payoffs equal the value exactly; all others are no larger."""
    if sol.symbolic_profile is None or isinstance(sol.value, Bracket):
        return False
    target = sol.value.as_number()
    vals = symbolic_payoffs(sub, sol.symbolic_profile)
    return any(v == target for v in vals) and all(v <= target for v in vals)
