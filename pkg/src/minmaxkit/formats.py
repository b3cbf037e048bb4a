"""JSON reading and writing for games, values and profiles.

Game files look like ``{"players": 3, "dims": [2, 2, 2], "payoffs": [...]}``
with the payoffs flattened row-major (last player fastest).  Each payoff is
an integer or a string ``"p/q"``.  Optional ``payoffs_p2`` / ``payoffs_p3``
arrays in the same layout carry the other players' utilities.
"""

from __future__ import annotations

import json
import math
import re
from fractions import Fraction
from importlib import resources
from typing import NamedTuple, Optional, Sequence

from .errors import ValidationError
from .game import BullyProfile, MixedStrategy, PayoffTensor
from .values import Bracket, Exact, GameValue, QuadIrr

_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(x, path: str = "$") -> Fraction:
    if isinstance(x, bool):
        raise ValidationError(f"{path}: expected a rational, got a boolean")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        m = _RATIONAL.match(x)
        if not m:
            raise ValidationError(f"{path}: {x!r} is not an integer or 'p/q' string")
        num, den = int(m.group(1)), int(m.group(2) or 1)
        if den == 0:
            raise ValidationError(f"{path}: zero denominator in {x!r}")
        return Fraction(num, den)
    raise ValidationError(f"{path}: expected an integer or 'p/q' string, got {type(x).__name__}")


def format_rational(x: Fraction):
    """Integers stay JSON numbers; everything else becomes ``"p/q"``."""
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def rational_str(x: Fraction) -> str:
    return str(Fraction(x))


class ParsedGame(NamedTuple):
    game: PayoffTensor
    payoffs_p2: Optional[tuple]
    payoffs_p3: Optional[tuple]


def _payoff_array(doc: dict, key: str, size: int) -> tuple:
    arr = doc[key]
    if not isinstance(arr, list):
        raise ValidationError(f"$.{key}: expected an array")
    if len(arr) != size:
        raise ValidationError(f"$.{key}: length {len(arr)} does not match product of dims {size}")
    return tuple(parse_rational(x, f"$.{key}[{i}]") for i, x in enumerate(arr))


def game_from_dict(doc) -> ParsedGame:
    if not isinstance(doc, dict):
        raise ValidationError("$: expected a JSON object")
    for key in ("players", "dims", "payoffs"):
        if key not in doc:
            raise ValidationError(f"$.{key}: missing")
    players, dims = doc["players"], doc["dims"]
    if isinstance(players, bool) or not isinstance(players, int) or players < 2:
        raise ValidationError("$.players: expected an integer >= 2")
    if not isinstance(dims, list) or len(dims) != players:
        raise ValidationError(f"$.dims: expected an array of {players} action counts")
    for i, n in enumerate(dims):
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise ValidationError(f"$.dims[{i}]: expected a positive integer")
    size = math.prod(dims)
    u1 = _payoff_array(doc, "payoffs", size)
    extra = []
    for key in ("payoffs_p2", "payoffs_p3"):
        extra.append(_payoff_array(doc, key, size) if doc.get(key) is not None else None)
    return ParsedGame(PayoffTensor(tuple(dims), u1), *extra)


def parse_game(text: str) -> ParsedGame:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"$: malformed JSON ({exc})") from None
    return game_from_dict(doc)


def game_to_dict(game: PayoffTensor, payoffs_p2: Sequence = None, payoffs_p3: Sequence = None) -> dict:
    doc = {
        "players": game.num_players,
        "dims": list(game.dims),
        "payoffs": [format_rational(u) for u in game.payoffs],
    }
    if payoffs_p2 is not None:
        doc["payoffs_p2"] = [format_rational(u) for u in payoffs_p2]
    if payoffs_p3 is not None:
        doc["payoffs_p3"] = [format_rational(u) for u in payoffs_p3]
    return doc


def serialize_game(game: PayoffTensor, payoffs_p2=None, payoffs_p3=None) -> str:
    return json.dumps(game_to_dict(game, payoffs_p2, payoffs_p3))


def value_to_json(v: Optional[GameValue]):
    if v is None:
        return None
    if isinstance(v, Exact):
        return {"exact": rational_str(v.value)}
    if isinstance(v, QuadIrr):
        return {"quadirr": {"a": rational_str(v.a), "b": rational_str(v.b), "d": v.d}}
    if isinstance(v, Bracket):
        return {"bracket": [rational_str(v.lo), rational_str(v.hi)]}
    raise TypeError(f"not a game value: {v!r}")


def value_from_json(doc) -> GameValue:
    if "exact" in doc:
        return Exact(parse_rational(doc["exact"], "$.exact"))
    if "quadirr" in doc:
        q = doc["quadirr"]
        return QuadIrr(parse_rational(q["a"], "$.quadirr.a"), parse_rational(q["b"], "$.quadirr.b"), int(q["d"]))
    if "bracket" in doc:
        lo, hi = doc["bracket"]
        return Bracket(parse_rational(lo, "$.bracket[0]"), parse_rational(hi, "$.bracket[1]"))
    raise ValidationError("$: value needs one of 'exact', 'quadirr', 'bracket'")


def strategy_to_json(s: MixedStrategy) -> list[str]:
    return [rational_str(p) for p in s.probs]


def profile_to_json(profile: Optional[BullyProfile]) -> list:
    if profile is None:
        return []
    return [strategy_to_json(s) for s in profile.strategies]


def load_schema(name: str) -> dict:
    """One of the JSON schemas shipped with the package (``game`` or ``result``)."""
    text = resources.files("minmaxkit").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)
