"""Real roots of univariate polynomials with rational coefficients.

Polynomials are lists of ``Fraction`` coefficients in ascending order
(``p[i]`` multiplies ``x**i``).  Roots of linear and quadratic factors are
returned exactly as ``QuadNumber``; roots of irreducible factors of higher
degree are isolated with Sturm sequences and returned as narrow rational
intervals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .values import QuadNumber

Poly = list


def trim(p: Sequence) -> Poly:
    p = [Fraction(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: Sequence) -> int:
    return len(trim(p)) - 1


def evaluate(p: Sequence, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p: Sequence) -> Poly:
    return trim([i * c for i, c in enumerate(p)][1:])


def poly_rem(a: Sequence, b: Sequence) -> Poly:
    a, b = trim(a), trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    while len(a) >= len(b):
        f = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[i + shift] -= f * c
        a = trim(a)
        if not a:
            break
    return a


def sturm_sequence(p: Sequence) -> list[Poly]:
    seq = [trim(p), derivative(p)]
    while seq[-1] and degree(seq[-1]) > 0:
        r = poly_rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])
    return [s for s in seq if s]


def _sign_changes(seq: Sequence[Poly], x: Fraction) -> int:
    signs = []
    for s in seq:
        v = evaluate(s, x)
        if v:
            signs.append(v > 0)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(seq: Sequence[Poly], lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots in ``(lo, hi]`` (Sturm's theorem)."""
    return _sign_changes(seq, lo) - _sign_changes(seq, hi)


def root_bound(p: Sequence) -> Fraction:
    """Cauchy bound: every real root has absolute value below this."""
    p = trim(p)
    lead = abs(p[-1])
    return 1 + max((abs(c) / lead for c in p[:-1]), default=Fraction(0))


def isolate_real_roots(p: Sequence, width: Fraction = Fraction(1, 2**64)) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals ``(lo, hi]`` each holding exactly one distinct real root."""
    p = trim(p)
    if degree(p) < 1:
        return []
    seq = sturm_sequence(p)
    b = root_bound(p)
    out = []
    stack = [(-b, b)]
    while stack:
        lo, hi = stack.pop()
        n = count_roots(seq, lo, hi)
        if n == 0:
            continue
        if n == 1 and hi - lo <= width:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((mid, hi))
        stack.append((lo, mid))
    return sorted(out)


@dataclass(frozen=True)
class IsolatedRoot:
    """A real root known only to lie in ``(lo, hi]``."""

    poly: tuple
    lo: Fraction
    hi: Fraction


def quadratic_roots(p: Sequence) -> list[QuadNumber]:
    """Real roots of a polynomial of degree at most 2 (identically zero -> [])."""
    p = trim(p)
    d = len(p) - 1
    if d <= 0:
        return []
    if d == 1:
        return [QuadNumber(-p[0] / p[1])]
    c, b, a = p
    disc = b * b - 4 * a * c
    if disc < 0:
        return []
    if disc == 0:
        return [QuadNumber(-b / (2 * a))]
    root = QuadNumber.sqrt_of(disc)
    r1 = (QuadNumber(-b) - root) / (2 * a)
    r2 = (QuadNumber(-b) + root) / (2 * a)
    return sorted([r1, r2])


def real_roots(p: Sequence, width: Fraction = Fraction(1, 2**64)) -> list:
    """All distinct real roots: ``QuadNumber`` where exact, ``IsolatedRoot`` otherwise."""
    p = trim(p)
    if degree(p) <= 2:
        return quadratic_roots(p)
    from sympy import Poly as SPoly, QQ, symbols

    x = symbols("x")
    sp = SPoly(list(reversed(p)), x, domain=QQ)
    out: list = []
    for factor, _ in sp.factor_list()[1]:
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(factor.all_coeffs())]
        if len(coeffs) - 1 <= 2:
            out.extend(quadratic_roots(coeffs))
        else:
            for lo, hi in isolate_real_roots(coeffs, width):
                out.append(IsolatedRoot(tuple(coeffs), lo, hi))
    return out
