"""Exact values: rationals, quadratic irrationals and certified brackets.

A game value is one of three variants:

* ``Exact(v)``        -- a rational number,
* ``QuadIrr(a, b, d)`` -- the real number ``a + b*sqrt(d)`` with ``d`` square-free,
* ``Bracket(lo, hi)``  -- an interval known to contain the value.

Quadratic irrationals are compared exactly by sign analysis and squaring,
so ``Exact`` and ``QuadIrr`` values are totally ordered.  Comparisons that
involve a ``Bracket`` are three-valued.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

RationalLike = Union[int, Fraction]


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Return ``(s, d)`` with ``n == s*s*d`` and ``d`` square-free (n > 0)."""
    if n <= 0:
        raise ValueError("n must be positive")
    s, d = 1, 1
    m = n
    p = 2
    while p * p <= m and p < 1000:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            d *= p
        p += 1 if p == 2 else 2
    if m > 1:
        r = math.isqrt(m)
        if r * r == m:
            s *= r
        elif m < 1_000_000:
            # every prime factor < 1000 is gone, so m is a prime here
            d *= m
        else:
            from sympy import factorint

            for q, e in factorint(m).items():
                s *= q ** (e // 2)
                if e % 2:
                    d *= q
    return s, d


def sign_a_plus_b_sqrt(a: Fraction, b: Fraction, d: int) -> int:
    """Exact sign of ``a + b*sqrt(d)`` for a non-negative integer ``d``."""
    sa, sb = _sign(a), _sign(b)
    if sb == 0 or d == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    lhs, rhs = a * a, b * b * d
    if lhs == rhs:
        return 0
    return sa if lhs > rhs else sb


def sign_two_roots(r: Fraction, s: Fraction, d1: int, t: Fraction, d2: int) -> int:
    """Exact sign of ``r + s*sqrt(d1) + t*sqrt(d2)``."""
    if d1 == d2:
        return sign_a_plus_b_sqrt(r, s + t, d1)
    # sign of the irrational part A = s*sqrt(d1) + t*sqrt(d2)
    ss, st = _sign(s) if d1 else 0, _sign(t) if d2 else 0
    if ss == 0:
        sA = st
    elif st == 0 or ss == st:
        sA = ss
    else:
        a2, b2 = s * s * d1, t * t * d2
        sA = 0 if a2 == b2 else (ss if a2 > b2 else st)
    sr = _sign(r)
    if sA == 0:
        return sr
    if sr == 0 or sr == sA:
        return sA
    # opposite signs: compare r^2 with A^2 = s^2 d1 + t^2 d2 + 2 s t sqrt(d1 d2)
    diff = sign_a_plus_b_sqrt(r * r - s * s * d1 - t * t * d2, -2 * s * t, d1 * d2)
    if diff == 0:
        return 0
    return sr if diff > 0 else sA


@dataclass(frozen=True)
class QuadNumber:
    """Element ``a + b*sqrt(d)`` of the field Q(sqrt(d)).

    ``d == 1`` is used for plain rationals (then ``b`` is always zero).
    """

    a: Fraction
    b: Fraction = Fraction(0)
    d: int = 1

    @staticmethod
    def of(x) -> "QuadNumber":
        if isinstance(x, QuadNumber):
            return x
        return QuadNumber(Fraction(x))

    @staticmethod
    def sqrt_of(x: Fraction) -> "QuadNumber":
        """Square root of a non-negative rational, with square-free radicand."""
        x = Fraction(x)
        if x < 0:
            raise ValueError("square root of a negative number")
        if x == 0:
            return QuadNumber(Fraction(0))
        s, d = squarefree_decompose(x.numerator * x.denominator)
        coeff = Fraction(s, x.denominator)
        if d == 1:
            return QuadNumber(coeff)
        return QuadNumber(Fraction(0), coeff, d)

    def _field(self, other: "QuadNumber") -> int:
        if self.d == 1 or self.b == 0:
            return other.d
        if other.d == 1 or other.b == 0 or other.d == self.d:
            return self.d
        raise ValueError(f"mixing Q(sqrt({self.d})) and Q(sqrt({other.d}))")

    def _make(self, a, b, d) -> "QuadNumber":
        if b == 0:
            return QuadNumber(Fraction(a))
        return QuadNumber(Fraction(a), Fraction(b), d)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def __add__(self, other):
        o = QuadNumber.of(other)
        return self._make(self.a + o.a, self.b + o.b, self._field(o))

    __radd__ = __add__

    def __neg__(self):
        return self._make(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-QuadNumber.of(other))

    def __rsub__(self, other):
        return QuadNumber.of(other) - self

    def __mul__(self, other):
        o = QuadNumber.of(other)
        d = self._field(o)
        return self._make(self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = QuadNumber.of(other)
        d = self._field(o)
        den = o.a * o.a - o.b * o.b * d
        if den == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(d))")
        conj = QuadNumber(o.a, -o.b, d) if o.b else QuadNumber(o.a)
        num = self * conj
        return self._make(num.a / den, num.b / den, d)

    def __rtruediv__(self, other):
        return QuadNumber.of(other) / self

    def sign(self) -> int:
        return sign_a_plus_b_sqrt(self.a, self.b, self.d)

    def cmp(self, other) -> int:
        o = QuadNumber.of(other)
        if self.b == 0 or o.b == 0 or self.d == o.d:
            return (self - o).sign()
        return sign_two_roots(self.a - o.a, self.b, self.d, -o.b, o.d)

    def __eq__(self, other):
        if not isinstance(other, (QuadNumber, int, Fraction)):
            return NotImplemented
        return self.cmp(other) == 0

    def __hash__(self):
        return hash((self.a, self.b, self.d if self.b else 1))

    def __lt__(self, other):
        return self.cmp(other) < 0

    def __le__(self, other):
        return self.cmp(other) <= 0

    def __gt__(self, other):
        return self.cmp(other) > 0

    def __ge__(self, other):
        return self.cmp(other) >= 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def approx(self, bits: int = 80) -> Fraction:
        """Rational approximation with absolute error below 2**-bits."""
        if self.b == 0:
            return self.a
        scale = 1 << (bits + 8 + abs(self.b).numerator.bit_length())
        # floor(sqrt(d) * scale) via integer square root
        root = Fraction(math.isqrt(self.d * scale * scale), scale)
        return self.a + self.b * root

    def bounds(self, bits: int = 80) -> tuple[Fraction, Fraction]:
        """Rational interval of width below 2**-bits containing the number."""
        if self.b == 0:
            return self.a, self.a
        scale = 1 << (bits + 8 + abs(self.b).numerator.bit_length())
        lo_root = Fraction(math.isqrt(self.d * scale * scale), scale)
        hi_root = lo_root + Fraction(1, scale)
        x, y = self.a + self.b * lo_root, self.a + self.b * hi_root
        return (x, y) if x <= y else (y, x)

    def __repr__(self):
        if self.b == 0:
            return f"QuadNumber({self.a})"
        return f"QuadNumber({self.a} + {self.b}*sqrt({self.d}))"


# --------------------------------------------------------------------------
# game values


@dataclass(frozen=True)
class Exact:
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))

    def as_number(self) -> QuadNumber:
        return QuadNumber(self.value)

    @property
    def lo(self) -> Fraction:
        return self.value

    @property
    def hi(self) -> Fraction:
        return self.value

    def __float__(self):
        return float(self.value)


@dataclass(frozen=True)
class QuadIrr:
    """The irrational value ``a + b*sqrt(d)``."""

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.b == 0:
            raise ValueError("QuadIrr needs a non-zero irrational part; use Exact")
        s, d = squarefree_decompose(int(self.d))
        if s != 1 or d < 2:
            raise ValueError(f"radicand {self.d} is not square-free and >= 2")

    def as_number(self) -> QuadNumber:
        return QuadNumber(self.a, self.b, self.d)

    @property
    def lo(self) -> Fraction:
        return self.as_number().bounds()[0]

    @property
    def hi(self) -> Fraction:
        return self.as_number().bounds()[1]

    def __float__(self):
        return float(self.as_number())


@dataclass(frozen=True)
class Bracket:
    lo: Fraction
    hi: Fraction
    unconverged: bool = False

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty bracket [{self.lo}, {self.hi}]")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x) -> bool:
        x = QuadNumber.of(x)
        return x >= self.lo and x <= self.hi

    def __float__(self):
        return float((self.lo + self.hi) / 2)


GameValue = Union[Exact, QuadIrr, Bracket]


def value_of(x: QuadNumber) -> GameValue:
    """Wrap a field element as ``Exact`` or ``QuadIrr``."""
    if x.b == 0:
        return Exact(x.a)
    return QuadIrr(x.a, x.b, x.d)


def is_algebraic(v: GameValue) -> bool:
    return isinstance(v, (Exact, QuadIrr))


def compare(x: GameValue, y: GameValue) -> int | None:
    """Order two game values: -1, 0, 1, or ``None`` when undecidable.

    Brackets compare as intervals; overlapping intervals are undecidable
    unless both are the same single point.
    """
    if is_algebraic(x) and is_algebraic(y):
        return x.as_number().cmp(y.as_number())
    xlo, xhi = _interval(x)
    ylo, yhi = _interval(y)
    if xhi < ylo:
        return -1
    if yhi < xlo:
        return 1
    if xlo == xhi == ylo == yhi:
        return 0
    if is_algebraic(x) and isinstance(y, Bracket):
        xn = x.as_number()
        if xn < y.lo:
            return -1
        if xn > y.hi:
            return 1
    if is_algebraic(y) and isinstance(x, Bracket):
        yn = y.as_number()
        if yn < x.lo:
            return 1
        if yn > x.hi:
            return -1
    return None


def _interval(v: GameValue) -> tuple[Fraction, Fraction]:
    if isinstance(v, Bracket):
        return v.lo, v.hi
    if isinstance(v, Exact):
        return v.value, v.value
    return v.as_number().bounds()


def compare_to(v: GameValue, alpha) -> int | None:
    """Compare a value with a rational threshold (``None`` = unknown)."""
    return compare(v, Exact(Fraction(alpha)))
