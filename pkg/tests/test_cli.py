import io
import json
import subprocess
import sys
from fractions import Fraction

import jsonschema
import pytest

from gamebank import FIXTURES, GOLDEN_3X2X2
from minmaxkit.cli import main
from minmaxkit.formats import load_schema, parse_game, serialize_game

RESULT = load_schema("result")
GAME = load_schema("game")


def run(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], stdout=out)
    text = out.getvalue()
    return code, json.loads(text) if text else None


def fx(name):
    return FIXTURES / name


def test_exact2_case2():
    code, res = run("exact2", fx("case2.json"))
    assert code == 0
    assert res["value"] == {"exact": "0"}
    assert res["certificates"]["case"] == 2 and res["certificates"]["case_predicate_holds"]
    jsonschema.validate(res, RESULT)


def test_solve_golden_ratio():
    code, res = run("solve", fx("golden_3x2x2.json"), "--mode", "exact")
    assert code == 0
    assert res["value"] == {"quadirr": {"a": "3/2", "b": "-1/2", "d": 5}}
    assert res["certificates"]["tie_equations_hold"] is True
    jsonschema.validate(res, RESULT)


def test_solve_numeric_and_decide():
    code, res = run("solve", fx("golden_3x2x2.json"), "--mode", "numeric", "--tol", "1e-9")
    assert code == 0 and res["unconverged"] is False
    lo, hi = (float(Fraction(x)) for x in res["value"]["bracket"])
    assert lo <= (3 - 5**0.5) / 2 <= hi
    code, res = run("solve", fx("golden_3x2x2.json"), "--alpha", "2/5")
    assert res["decision"] == "yes"
    jsonschema.validate(res, RESULT)


def test_unconverged_exit_code():
    code, res = run("solve", fx("flat_optimum.json"), "--max-nodes", "20")
    assert code == 4 and res["unconverged"] is True
    jsonschema.validate(res, RESULT)


def test_maxmin_and_simple():
    code, res = run("maxmin", fx("case5.json"))
    assert res["value"] == {"exact": "1/2"}
    code, res = run("simple", fx("case5.json"), "--s", "2")
    assert res["value"] == {"exact": "3/4"} and code == 0
    code, res = run("simple", fx("quad_2x2x2.json"), "--epsilon", "1", "--normalize")
    assert res["value"] == {"exact": "0"}
    code, _ = run("simple", fx("quad_2x2x2.json"), "--s", "2")
    assert code == 2


def test_reduce_and_clique_check():
    out = io.StringIO()
    assert main(["reduce", str(fx("c5.graph")), "--k", "3"], stdout=out) == 0
    doc = json.loads(out.getvalue())
    jsonschema.validate(doc, GAME)
    assert doc["dims"] == [6, 15, 15]
    code, res = run("clique-check", fx("k5.graph"), "--k", "4")
    assert res["value"] == {"exact": "1/4"}
    code, res = run("clique-check", fx("c5.graph"), "--k", "3")
    assert res["value"] is None and res["certificates"]["clique"] is None
    jsonschema.validate(res, RESULT)


def test_bully_threat_and_threat_point():
    code, res = run("bully-threat", fx("small_bully.json"), "--epsilon", "1/10")
    assert code == 0 and "bracket" in res["value"]
    code, res = run("threat-point", fx("three_utilities.json"), "--epsilon", "1/10")
    assert code == 0 and len(res["value"]) == 3
    assert res["value"][0] == {"exact": "3/4"}
    jsonschema.validate(res, RESULT)


def test_oracle():
    code, res = run("oracle", fx("case5.json"), "--resolution", "4")
    assert res["value"]["bracket"][1] == "3/4"
    code, _ = run("oracle", fx("case5.json"), "--resolution", "100000")
    assert code == 3


def test_usage_and_validation_codes(tmp_path):
    assert run("frobnicate")[0] == 1
    assert run()[0] == 1
    assert run("solve", fx("case5.json"), "--mode", "magic")[0] == 1
    bad = tmp_path / "bad.json"
    bad.write_text('{"players":3,"dims":[2,2,2],"payoffs":[1,0,0,0,0,0,0]}')
    assert run("solve", bad)[0] == 2
    assert run("exact2", tmp_path / "missing.json")[0] == 2
    assert run("exact2", fx("quad_2x2x2.json"))[0] == 2


@pytest.mark.parametrize("argv", [
    ["exact2", "case5.json"],
    ["simple", "case5.json", "--s", "1"],
    ["solve", "quad_2x2x2.json"],
    ["solve", "small_bully.json", "--mode", "numeric", "--tol", "1/1000"],
    ["maxmin", "three_utilities.json"],
    ["clique-check", "k3.graph", "--k", "3"],
    ["bully-threat", "constant.json", "--epsilon", "1/2", "--bully", "3"],
    ["threat-point", "small_bully.json", "--epsilon", "1/4", "--bully", "2"],
    ["oracle", "quad_2x2x2.json", "--resolution", "10"],
])
def test_every_output_matches_schema(argv):
    argv = [argv[0], str(fx(argv[1]))] + argv[2:]
    code, res = run(*argv)
    assert code == 0
    jsonschema.validate(res, RESULT)


def test_console_script_with_stdin():
    proc = subprocess.run(
        [sys.executable, "-m", "minmaxkit", "solve", "-", "--seed", "3"],
        input=serialize_game(GOLDEN_3X2X2), capture_output=True, text=True, check=True,
    )
    assert json.loads(proc.stdout)["value"]["quadirr"]["d"] == 5


def test_reduce_output_round_trips():
    out = io.StringIO()
    main(["reduce", str(fx("k3.graph")), "--k", "2"], stdout=out)
    g = parse_game(out.getvalue()).game
    assert json.loads(serialize_game(g)) == json.loads(out.getvalue())
