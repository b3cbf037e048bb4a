"""Three-player 0-1 games encoding k-Clique.

Bullies pick a (label, vertex) pair each.  Player 1 picks a label ``x1``
and which bully to check.  Player 1 wins (payoff 1) when the checked bully
used label ``x1``, or when the bullies are caught being inconsistent: same
label but different vertices, different labels but the same vertex, or two
distinct non-adjacent vertices.  If the graph has a k-clique, the bullies
can hold Player 1 to ``1/k`` by picking a uniformly random labelled clique
vertex.

Indexing:  Player 1 action ``(x1, i)`` is ``(x1 - 1) * 2 + (i - 2)``; bully
action ``(x, v)`` is ``(x - 1) * n + v``.  Labels run over ``1..k``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import BudgetError, ValidationError
from .game import MAX_OUTCOMES, BullyProfile, MixedStrategy, PayoffTensor

CLIQUE_BUDGET = 10**7


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset

    def __post_init__(self):
        if self.n < 0:
            raise ValidationError(f"vertex count must be non-negative, got {self.n}")
        for e in self.edges:
            if len(e) != 2:
                raise ValidationError(f"edge {set(e)} must join two distinct vertices")
            u, v = sorted(e)
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValidationError(f"edge {{{u}, {v}}} has an endpoint outside 0..{self.n - 1}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        seen = set()
        for u, v in edges:
            e = frozenset((int(u), int(v)))
            if len(e) == 1:
                raise ValidationError(f"self-loop at vertex {u}")
            if e in seen:
                raise ValidationError(f"duplicate edge {{{u}, {v}}}")
            seen.add(e)
        return cls(n, frozenset(seen))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls.from_edges(n, itertools.combinations(range(n), 2))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, ((i, (i + 1) % n) for i in range(n)))

    def has_edge(self, u: int, v: int) -> bool:
        return frozenset((u, v)) in self.edges

    @property
    def m(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(tuple(sorted(e)) for e in self.edges)


def parse_graph(text: str) -> Graph:
    """Read ``n m`` followed by ``m`` lines ``u v`` (0-indexed)."""
    tokens = [line.split() for line in text.splitlines() if line.strip()]
    if not tokens or len(tokens[0]) != 2:
        raise ValidationError("graph file must start with a line 'n m'")
    try:
        n, m = int(tokens[0][0]), int(tokens[0][1])
        edges = [(int(t[0]), int(t[1])) for t in tokens[1:]]
    except ValueError as exc:
        raise ValidationError(f"graph file: {exc}") from None
    if any(len(t) != 2 for t in tokens[1:]):
        raise ValidationError("every edge line needs exactly two vertices")
    if len(edges) != m:
        raise ValidationError(f"graph file declares {m} edges but lists {len(edges)}")
    return Graph.from_edges(n, edges)


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def p1_index(x1: int, i: int) -> int:
    return (x1 - 1) * 2 + (i - 2)


def bully_index(x: int, v: int, n: int) -> int:
    return (x - 1) * n + v


def clique_payoff(g: Graph, x1: int, i: int, x2: int, v2: int, x3: int, v3: int) -> int:
    if x1 == (x2 if i == 2 else x3):
        return 1
    if x2 == x3 and v2 != v3:
        return 1
    if x2 != x3 and v2 == v3:
        return 1
    if v2 != v3 and not g.has_edge(v2, v3):
        return 1
    return 0


def build_clique_game(g: Graph, k: int, budget: int = MAX_OUTCOMES) -> PayoffTensor:
    """The ``2k x kn x kn`` game for graph ``g`` and clique size ``k``."""
    if k < 2:
        raise ValidationError(f"clique size must be at least 2, got {k}")
    if g.n < 1:
        raise ValidationError("graph needs at least one vertex")
    n = g.n
    size = 2 * k * (k * n) ** 2
    if size > budget:
        raise BudgetError("clique game outcomes", size, budget)
    bully = [(x, v) for x in range(1, k + 1) for v in range(n)]
    one, zero = Fraction(1), Fraction(0)
    flat = []
    for x1 in range(1, k + 1):
        for i in (2, 3):
            for x2, v2 in bully:
                for x3, v3 in bully:
                    flat.append(one if clique_payoff(g, x1, i, x2, v2, x3, v3) else zero)
    return PayoffTensor((2 * k, k * n, k * n), tuple(flat))


def clique_profile(g: Graph, k: int, clique: Sequence[int]) -> BullyProfile:
    """Both bullies play ``(j, clique[j-1])`` with probability ``1/k`` each."""
    clique = [int(v) for v in clique]
    if len(clique) != k or len(set(clique)) != k:
        raise ValidationError(f"need {k} distinct vertices, got {clique}")
    for v in clique:
        if not 0 <= v < g.n:
            raise ValidationError(f"vertex {v} is not in the graph")
    for u, v in itertools.combinations(clique, 2):
        if not g.has_edge(u, v):
            raise ValidationError(f"not a clique: edge {{{u}, {v}}} is missing")
    n = g.n
    support = [bully_index(j + 1, v, n) for j, v in enumerate(clique)]
    s = MixedStrategy.uniform(k * n, support)
    return BullyProfile.of(s, s)


def find_clique_bruteforce(g: Graph, k: int, budget: int = CLIQUE_BUDGET) -> Optional[tuple[int, ...]]:
    """Lexicographically first k-clique, or ``None``."""
    if k < 1:
        raise ValidationError(f"clique size must be positive, got {k}")
    count = math.comb(g.n, k)
    if count > budget:
        raise BudgetError("candidate vertex subsets", count, budget)
    for cand in itertools.combinations(range(g.n), k):
        if all(g.has_edge(u, v) for u, v in itertools.combinations(cand, 2)):
            return cand
    return None
