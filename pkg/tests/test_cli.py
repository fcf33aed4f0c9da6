"""Command-line interface: examples, exit codes, determinism and fuzzing."""

import io
import json
import random

import pytest

from casson.cli import run

TREFOIL_JSON = json.dumps({
    "generators": ["g1", "g2"],
    "relators": ["g1 g2 g1 G2 G1 G2"],
    "meridian": "g1",
    "longitude": "g2 g1 g1 g2 G1^4",
})


def call(*argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err, io.StringIO(stdin))
    return code, out.getvalue(), err.getvalue()


def test_lambda():
    assert call("lambda", "trefoil") == (0, "3\n", "")
    code, out, _ = call("lambda", "--poly", "l*m^6 + 1", "--json")
    assert code == 0 and json.loads(out)["lambda_prime"] == 3


def test_ahat_deg_and_mul():
    code, out, _ = call("ahat", "deg", "trefoil")
    assert code == 0 and out.startswith("deg_m 6")
    code, out, _ = call("ahat", "mul", "trefoil", "figure-8", "--json")
    assert code == 0 and json.loads(out)


def test_transversal():
    assert call("transversal", "1/0", "0/1")[:2] == (0, "transverse (det=1)\n")
    code, out, _ = call("transversal", "1/2", "3/1", "--json")
    assert code == 0 and abs(json.loads(out)["det"]) == 5
    assert call("transversal", "1/2", "1/2")[0] == 1


def test_surgery():
    code, out, _ = call("surgery", "intersect", "trefoil", "-p", "1", "-q", "5")
    assert code == 0 and out == "total 29\n"
    code, out, _ = call("surgery", "intersect", "trefoil", "-p", "1", "-q", "5", "--points", "--json")
    data = json.loads(out)
    assert sum(pt["mult"] for pt in data["points"]) == data["total"] == 29
    code, out, _ = call("surgery", "growth", "trefoil", "-p", "1", "--json")
    assert code == 0 and json.loads(out)["n"] == 6


def test_lambda_asym_csv():
    code, out, _ = call("lambda-asym", "trefoil", "-p", "1", "--q-max", "6", "--csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].split(",")[0] == "q" and len(lines) == 7


def test_alexander_double_and_admissible():
    assert call("alexander-double", "-n", "1")[1] == "t^2 - t + 1\n"
    # the trefoil's Alexander roots are primitive sixth roots of unity
    code, out, _ = call("admissible", "trefoil", "-p", "6", "--json")
    assert code == 0 and json.loads(out)["admissible"] is True
    code, out, _ = call("admissible", "trefoil", "-p", "12", "--json")
    assert json.loads(out)["admissible"] is False and json.loads(out)["p_prime"] == 6
    code, out, _ = call("admissible", "--alexander", "t^2 - 3*t + 1", "-p", "5", "--json")
    assert json.loads(out)["admissible"] is True


def test_seminorm():
    code, out, _ = call("seminorm", "trefoil", "-a", "1", "-b", "0")
    assert code == 0 and out == "2\n"
    assert call("seminorm", "trefoil", "-a", "0", "-b", "1")[1] == "12\n"


def test_apoly_stdin_and_file(tmp_path):
    code, out, _ = call("apoly", "--presentation", "-", "--lift-check", "5", "--json", stdin=TREFOIL_JSON)
    data = json.loads(out)
    assert code == 0 and data["deg_m"] == 6 and data["lambda_prime"] == 3
    assert data["lift_max_residual"] < 1e-8
    f = tmp_path / "p.json"
    f.write_text(TREFOIL_JSON)
    assert call("apoly", "--presentation", str(f))[0] == 0
    assert call("apoly", "--presentation", "-", stdin="{not json")[0] == 1
    assert call("apoly", "--presentation", str(tmp_path / "missing.json"))[0] == 1


def test_whitehead_commands():
    code, out, _ = call("whitehead", "verify", "--samples", "20", "--json")
    assert code == 0 and json.loads(out)["ok"] is True
    code, out, _ = call("whitehead", "glue", "unknot", "-n", "1", "--seeds", "3", "--json")
    assert code == 0 and isinstance(json.loads(out)["solutions"], list)


def test_db_validate(tmp_path):
    assert call("db", "validate")[0] == 0
    bad = tmp_path / "bad.json"
    bad.write_text("[{\"name\": 3}]")
    code, out, _ = call("db", "validate", "--db", str(bad), "--json")
    assert code == 1 and json.loads(out)["error"] == "database"


@pytest.mark.parametrize("argv,code", [
    ([], 2),
    (["nope"], 2),
    (["lambda", "no-such-knot"], 1),
    (["lambda"], 2),
    (["surgery", "intersect", "trefoil", "-p", "2", "-q", "4"], 1),
    (["surgery", "intersect", "trefoil", "-p", "x", "-q", "1"], 2),
    (["lambda", "--poly", "m^"], 1),
    (["lambda", "--poly", "0"], 1),
    (["admissible", "trefoil", "-p", "0"], 1),
    (["lambda-asym", "trefoil", "-p", "1", "--q-max", "1"], 2),
    (["whitehead", "verify", "--samples", "0"], 1),
    (["whitehead", "glue", "trefoil", "--seeds", "0"], 1),
    (["transversal", "1/0", "2/0"], 2),
    (["--seed", "-1", "lambda", "trefoil"], 2),
])
def test_exit_codes(argv, code):
    assert call(*argv)[0] == code


def test_json_errors_on_stdout():
    code, out, err = call("lambda", "no-such-knot", "--json")
    assert code == 1 and err == ""
    data = json.loads(out)
    assert data["exit"] == 1 and data["error"] == "domain"
    code, out, _ = call("nope", "--json")
    assert code == 2 and json.loads(out)["error"] == "usage"


def test_help_and_version():
    assert call("--help")[0] == 0
    assert call("--version")[0] == 0


@pytest.mark.parametrize("argv", [
    ["surgery", "intersect", "trefoil", "-p", "1", "-q", "3", "--points", "--json"],
    ["whitehead", "verify", "--samples", "10", "--seed", "4", "--json"],
    ["whitehead", "glue", "trefoil", "--seeds", "2", "--seed", "1", "--json"],
    ["seminorm", "figure-8", "-a", "1", "-b", "1", "--json"],
])
def test_deterministic_json(argv):
    a, b = call(*argv), call(*argv)
    assert a == b and a[0] == 0


VOCAB = ["trefoil", "figure-8", "unknot", "nope", "-p", "-q", "-n", "-a", "-b", "--poly", "--json", "--seed",
         "--csv", "--points", "--q-max", "--alexander", "--samples", "--seeds", "--db", "--presentation",
         "--lift-check", "-", "0", "1", "-1", "2", "3", "7", "1/0", "0/1", "2/3", "-1/2", "x", "", "1e3",
         "m^2 - l", "l*m^6 + 1", "t^2 - t + 1", "m^", "((", "99999999999999999999", "-0"]
COMMANDS = [["ahat", "deg"], ["ahat", "mul"], ["lambda"], ["lambda-asym"], ["surgery", "intersect"],
            ["surgery", "growth"], ["transversal"], ["alexander-double"], ["admissible"], ["apoly"],
            ["seminorm"], ["whitehead", "verify"], ["whitehead", "glue"], ["db", "validate"], ["bogus"], []]


def _fuzz_argv(rng):
    argv = list(rng.choice(COMMANDS)) + [rng.choice(VOCAB) for _ in range(rng.randint(0, 6))]
    if argv[:1] == ["whitehead"]:
        # keep the numerical work tiny; repeated flags take the last value
        argv += ["--samples", "1"] if argv[1] == "verify" else ["--seeds", "1"]
    return argv


def test_fuzz_no_uncaught_exceptions():
    rng = random.Random(2024)
    codes = set()
    for _ in range(10_000):
        argv = _fuzz_argv(rng)
        code, out, err = call(*argv, stdin=rng.choice(["", TREFOIL_JSON, "[]", "{\"generators\": 1}"]))
        assert code in (0, 1, 2, 3), argv
        if "--json" in argv and out:
            json.loads(out.splitlines()[-1])
        codes.add(code)
    assert {0, 1, 2} <= codes
