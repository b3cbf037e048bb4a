"""Minmax (threat) values of multi-player strategic-form games.

Player 1 is the threatened player; the others ("bullies") pick independent
mixed strategies to hold Player 1's best-response payoff down.
"""

from .bilinear import SubgameSolution, solve_subgame_exact2
from .clique import Graph, build_clique_game, clique_profile, find_clique_bruteforce, parse_graph
from .errors import BudgetError, ValidationError
from .exact_two import CaseResult, classify_case, solve_two_by
from .formats import parse_game, serialize_game, value_from_json, value_to_json
from .game import (
    BullyProfile,
    MixedStrategy,
    PayoffTensor,
    affine_transform,
    best_response_value,
    expected_payoff,
    pad_game,
)
from .numeric import descent_minmax, solve_subgame_numeric
from .oracle import OracleResult, oracle_minmax
from .simple import approx_minmax_epsilon, approx_minmax_simple, hard_instance, support_size
from .support_enum import SupportSet, decide_minmax_leq, enumerate_supports, minmax_support_enum
from .threat import bully_threat_value, simplex_lattice, threat_point
from .values import Bracket, Exact, GameValue, QuadIrr
from .zerosum import ZeroSumSolution, maxmin_value, zs_value

__all__ = [
    "affine_transform",
    "approx_minmax_epsilon",
    "approx_minmax_simple",
    "best_response_value",
    "Bracket",
    "BudgetError",
    "build_clique_game",
    "bully_threat_value",
    "BullyProfile",
    "CaseResult",
    "classify_case",
    "clique_profile",
    "decide_minmax_leq",
    "descent_minmax",
    "enumerate_supports",
    "Exact",
    "expected_payoff",
    "find_clique_bruteforce",
    "GameValue",
    "Graph",
    "hard_instance",
    "maxmin_value",
    "minmax_support_enum",
    "MixedStrategy",
    "oracle_minmax",
    "OracleResult",
    "pad_game",
    "parse_game",
    "parse_graph",
    "PayoffTensor",
    "QuadIrr",
    "serialize_game",
    "simplex_lattice",
    "solve_subgame_exact2",
    "solve_subgame_numeric",
    "solve_two_by",
    "SubgameSolution",
    "support_size",
    "SupportSet",
    "threat_point",
    "ValidationError",
    "value_from_json",
    "value_to_json",
    "ZeroSumSolution",
    "zs_value",
]

__version__ = "0.1.0"
