"""Command-line front end.

Every command prints one JSON object on stdout with at least ``value``,
``method``, ``profile`` and ``certificates`` (except ``reduce``, which
prints a game file).  Exit codes: 0 ok, 1 usage, 2 invalid input,
3 budget exceeded, 4 unconverged numeric result.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .bilinear import certificate_holds, symbolic_payoffs
from .clique import build_clique_game, clique_profile, find_clique_bruteforce, parse_graph
from .errors import BudgetError, ValidationError
from .exact_two import solve_two_by
from .formats import (
    game_to_dict,
    parse_game,
    profile_to_json,
    rational_str,
    strategy_to_json,
    value_to_json,
)
from .game import best_response_value, normalize_unit
from .numeric import DEFAULT_MAX_NODES
from .oracle import oracle_minmax
from .simple import approx_minmax_epsilon, approx_minmax_simple, error_bound
from .support_enum import decide_minmax_leq, minmax_support_enum
from .threat import bully_threat_value, map_back, threat_point
from .values import Exact, QuadIrr
from .zerosum import maxmin_value

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_BUDGET, EXIT_UNCONVERGED = 0, 1, 2, 3, 4


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(f"{self.prog}: {message}\n{self.format_usage()}")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None


def _rational_arg(text: str) -> Fraction:
    # "p/q", integers and decimal literals such as 1e-9 (converted exactly)
    try:
        return Fraction(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _result(value, method, profile=None, certificates=None, **extra) -> dict:
    out = {
        "value": value_to_json(value) if not isinstance(value, list) else [value_to_json(v) for v in value],
        "method": method,
        "profile": profile if isinstance(profile, list) else profile_to_json(profile),
        "certificates": certificates or {},
    }
    out.update(extra)
    return out


def _load_game(args):
    return parse_game(_read(args.file))


def cmd_exact2(args):
    game = _load_game(args).game
    sol = solve_two_by(game)
    br = best_response_value(game, sol.profile).value
    certs = {
        "case": sol.case.case_id,
        "witnesses": sol.case.witnesses,
        "case_predicate_holds": sol.case.check(game),
        "best_response_at_profile": rational_str(br),
    }
    return _result(sol.value, "exact-two", sol.profile, certs)


def cmd_simple(args):
    game = _load_game(args).game
    norm = normalize_unit(game) if args.normalize else None
    g = norm.game if norm else game
    if args.s is not None:
        res = approx_minmax_simple(g, args.s)
    else:
        res = approx_minmax_epsilon(g, args.epsilon)
    value = map_back(res.value, norm.scale, norm.shift) if norm else res.value
    certs = {
        "s": res.s,
        "error_bound": error_bound(max(2, game.dims[0]), res.s),
        "best_response_at_profile": rational_str(best_response_value(game, res.profile).value),
    }
    return _result(value, "simple", res.profile, certs)


def _symbolic_json(symbolic):
    return [[{"a": rational_str(x.a), "b": rational_str(x.b), "d": x.d} for x in s] for s in symbolic]


def cmd_solve(args):
    game = _load_game(args).game
    kwargs = dict(mode=args.mode, seed=args.seed, workers=args.threads, max_nodes=args.max_nodes)
    if args.tol is not None:
        kwargs["tol"] = args.tol
    if args.alpha is not None:
        dec = decide_minmax_leq(game, args.alpha, **kwargs)
        sol, decision = dec.solution, dec.answer
    else:
        sol, decision = minmax_support_enum(game, **kwargs), None
    certs = {
        "supports": [list(s) for s in sol.supports] if sol.supports else None,
        "best_response_at_profile": rational_str(best_response_value(game, sol.profile).value),
        "stats": sol.stats,
    }
    if isinstance(sol.value, QuadIrr) and sol.symbolic_profile is not None:
        certs["symbolic_profile"] = _symbolic_json(sol.symbolic_profile)
        certs["tie_equations_hold"] = certificate_holds(game, sol)
        certs["payoffs_at_symbolic_profile"] = [
            {"a": rational_str(v.a), "b": rational_str(v.b), "d": v.d}
            for v in symbolic_payoffs(game, sol.symbolic_profile)
        ]
    extra = {"unconverged": sol.unconverged}
    if decision is not None:
        extra["decision"] = decision
        certs["alpha"] = rational_str(args.alpha)
    return _result(sol.value, sol.method, sol.profile, certs, **extra)


def cmd_maxmin(args):
    game = _load_game(args).game
    sol = maxmin_value(game)
    certs = {
        "row_strategy": strategy_to_json(sol.row_strategy),
        "col_strategy": strategy_to_json(sol.col_strategy),
        "col_support_size": sol.col_support_size,
    }
    # the profile of a security value is Player 1's own strategy
    return _result(Exact(sol.value), "maxmin-lp", [strategy_to_json(sol.row_strategy)], certs)


def cmd_reduce(args):
    g = parse_graph(_read(args.file))
    return game_to_dict(build_clique_game(g, args.k))


def cmd_clique_check(args):
    g = parse_graph(_read(args.file))
    clique = find_clique_bruteforce(g, args.k)
    if clique is None:
        return _result(None, "clique-bruteforce", [], {"clique": None, "n": g.n, "k": args.k})
    game = build_clique_game(g, args.k)
    profile = clique_profile(g, args.k, clique)
    value = best_response_value(game, profile).value
    return _result(Exact(value), "clique-bruteforce", profile,
                   {"clique": list(clique), "n": g.n, "k": args.k})


def cmd_bully_threat(args):
    game = _load_game(args).game
    norm = normalize_unit(game) if args.normalize else None
    g = norm.game if norm else game
    res = bully_threat_value(g, args.epsilon, bully=args.bully)
    value = map_back(res.value, norm.scale, norm.shift) if norm else res.value
    certs = {
        "resolution": res.resolution,
        "best_response_at_profile": rational_str(best_response_value(game, res.profile).value),
    }
    return _result(value, f"bully-threat(player {args.bully})", res.profile, certs)


def cmd_threat_point(args):
    parsed = _load_game(args)
    entries = threat_point(parsed.game, args.epsilon, parsed.payoffs_p2, parsed.payoffs_p3,
                           small_player=args.bully)
    certs = {"entries": [{"player": e.player, "method": e.method, "note": e.note} for e in entries]}
    profiles = [profile_to_json(e.profile) if e.profile is not None else None for e in entries]
    return _result([e.value for e in entries], "threat-point", profiles, certs)


def cmd_oracle(args):
    game = _load_game(args).game
    res = oracle_minmax(game, args.resolution)
    certs = {"resolution": res.resolution, "witness_value": rational_str(res.bracket.hi)}
    return _result(res.bracket, "oracle", res.witness, certs)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for randomized multi-starts")
    common.add_argument("--threads", type=int, default=1, help="worker cap for parallel solves")

    p = _Parser(prog="minmaxkit", description="Minmax (threat) values of strategic-form games.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, fn, help_, file_help="game JSON file ('-' for stdin)"):
        sp = sub.add_parser(name, help=help_, parents=[common])
        sp.add_argument("file", help=file_help)
        sp.set_defaults(func=fn)
        return sp

    add("exact2", cmd_exact2, "exact value of a 2 x n x n' 0-1 game")
    sp = add("simple", cmd_simple, "search over uniform multiset strategies")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--s", type=int, help="multiset size")
    g.add_argument("--epsilon", type=_rational_arg, help="target additive error")
    sp.add_argument("--normalize", action="store_true", help="rescale payoffs to [0, 1] first")
    sp = add("solve", cmd_solve, "support enumeration (exact or numeric)")
    sp.add_argument("--mode", choices=["exact", "numeric"], default="exact")
    sp.add_argument("--tol", type=_rational_arg, default=None)
    sp.add_argument("--alpha", type=_rational_arg, default=None, help="decide value <= alpha")
    sp.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_NODES,
                    help="branch-and-bound node budget per numeric subgame")
    add("maxmin", cmd_maxmin, "Player 1's security value")
    sp = add("reduce", cmd_reduce, "build the clique game of a graph", "graph file ('-' for stdin)")
    sp.add_argument("--k", type=int, required=True)
    sp = add("clique-check", cmd_clique_check, "brute-force k-clique search", "graph file ('-' for stdin)")
    sp.add_argument("--k", type=int, required=True)
    sp = add("bully-threat", cmd_bully_threat, "lattice over one bully plus LPs")
    sp.add_argument("--epsilon", type=_rational_arg, required=True)
    sp.add_argument("--bully", type=int, choices=[2, 3], default=2)
    sp.add_argument("--normalize", action="store_true", help="rescale payoffs to [0, 1] first")
    sp = add("threat-point", cmd_threat_point, "minmax value of every player")
    sp.add_argument("--epsilon", type=_rational_arg, required=True)
    sp.add_argument("--bully", type=int, choices=[1, 2, 3], default=None,
                    help="player with few strategies to discretize")
    sp = add("oracle", cmd_oracle, "brute-force grid bracket")
    sp.add_argument("--resolution", type=int, required=True)
    return p


def main(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            raise _Usage(parser.format_help())
        out = args.func(args)
    except _Usage as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    json.dump(out, stdout)
    stdout.write("\n")
    return EXIT_UNCONVERGED if out.get("unconverged") else EXIT_OK


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
