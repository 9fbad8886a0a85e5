import json
import subprocess
import sys
from fractions import Fraction as F

import pytest
from conftest import problems
from hypothesis import given

from bll_equality.cli import main
from bll_equality.serialize import ParseError, dump_problem, format_rational, parse_problem, parse_rational

SUM = [[1, 0], [0, 1], [1, 1]]


def write(tmp_path, doc, name="p.json"):
    path = tmp_path / name
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc), encoding="utf-8")
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out else None), out.err


def test_rationals():
    assert parse_rational("3/6") == F(1, 2)
    assert parse_rational(-4) == -4
    assert parse_rational("-7") == -7
    assert format_rational(F(-2, 4)) == "-1/2"
    assert format_rational(3) == "3"
    for bad in ["1/0", "1.5", 1.5, True, None, "x"]:
        with pytest.raises(ParseError):
            parse_rational(bad)


@given(problems())
def test_round_trip(P):
    doc = dump_problem(P)
    assert parse_problem(doc) == P
    assert dump_problem(parse_problem(json.loads(json.dumps(doc)))) == doc


def test_eval_unit(tmp_path, capsys):
    path = write(tmp_path, {"forms": SUM, "sets": [[[-1, 1]]] * 3})
    code, out, _ = run(capsys, "eval", "--file", path)
    assert code == 0 and out == {"value": "3", "symmetrized": "3", "deficit": "0"}


def test_eval_shifted_and_mc(tmp_path, capsys):
    path = write(tmp_path, {"forms": SUM, "sets": [[[-1, 1]], [[-1, 1]], [[0, 2]]]})
    code, out, _ = run(capsys, "eval", "--file", path, "--samples", "20000", "--seed", "3")
    assert code == 0 and out["deficit"] == "1" and out["value"] == "2"
    assert isinstance(out["mc"]["estimate"], float)
    assert abs(out["mc"]["estimate"] - 2) < 5 * out["mc"]["stderr"]


def test_parse_errors(tmp_path, capsys):
    cases = [
        {"forms": SUM, "sets": [[[0, "1/0"]], [[0, 1]], [[0, 1]]]},
        {"forms": SUM, "sets": [[[2, 1]], [[0, 1]], [[0, 1]]]},
        {"forms": SUM, "sets": [[[0, 1]]]},
        {"forms": [[1, 0], [0, 1]], "sets": [[[0, 1]]] * 2},
        {"sets": []},
        "{not json",
    ]
    for i, doc in enumerate(cases):
        code, out, err = run(capsys, "eval", "--file", write(tmp_path, doc, f"{i}.json"))
        assert code == 2 and out is None and err.startswith("error:")
    code, out, _ = run(capsys, "eval", "--file", str(tmp_path / "missing.json"))
    assert code == 2 and out is None


def test_degenerate_exit(tmp_path, capsys):
    path = write(tmp_path, {"forms": [[1, 0], [0, 1], [2, 0]], "sets": [[[0, 1]]] * 3})
    for cmd in ("eval", "admissible", "analyze"):
        code, out, _ = run(capsys, cmd, "--file", path)
        assert code == 3 and out is None


def test_admissible(tmp_path, capsys):
    code, out, _ = run(capsys, "admissible", "--file", write(tmp_path, {"forms": SUM, "measures": [1, 1, 1]}))
    assert code == 0 and out["verdict"] == "strictly_admissible"
    code, out, _ = run(capsys, "admissible", "--file", write(tmp_path, {"forms": SUM, "measures": [0, 1, 1]}))
    assert code == 4 and out is None


def test_deform(tmp_path, capsys):
    path = write(tmp_path, {"forms": SUM, "measures": [2, 2, 2]})
    code, out, _ = run(capsys, "deform", "--file", path)
    assert code == 0 and out["r_bar"] == "1" and out["normal_form"] == {"c": "1", "t": ["0", "1"], "order": [0, 1, 2]}
    code, out, _ = run(capsys, "deform", "--file", path, "--trace")
    assert code == 0 and out["trace"][1]["chain"]["identity_ok"] is True
    code, out, _ = run(capsys, "deform", "--file", write(tmp_path, {"forms": SUM, "measures": [2, 1, 1]}))
    assert code == 4
    code, out, _ = run(capsys, "deform", "--file", path, "--index", "7")
    assert code == 4


def test_deform_general_forms(tmp_path, capsys):
    path = write(tmp_path, {"forms": [[1, 1], [1, -1], [1, 0], [0, 1]], "measures": [3, 3, 2, 2]})
    code, out, _ = run(capsys, "deform", "--file", path, "--index", "2")
    assert code == 0 and out["normal_form"]["order"] == [2, 0, 1, 3]
    assert out["r_bar"] == out["r_bar_bisection"] and out["containment_index"] == 0


def test_analyze(tmp_path, capsys):
    path = write(tmp_path, {"forms": SUM, "sets": [[[0, 2]], [[1, 3]], [[1, 5]]]})
    code, out, _ = run(capsys, "analyze", "--file", path)
    assert code == 0 and out["is_maximizer"] is True and out["z"] == ["1", "2"]


def test_witness(tmp_path, capsys):
    path = write(tmp_path, {"forms": SUM, "measures": [3, 1, 1]})
    code, out, _ = run(capsys, "witness", "--file", path, "--index", "0")
    assert code == 0 and out["sets"][0] == [["-1", "1"], ["50", "51"]]
    code2, out2, _ = run(capsys, "witness", "--file", path)
    assert out2 == out
    code, out, _ = run(capsys, "eval", "--file", write(tmp_path, out, "w.json"))
    assert out["deficit"] == "0"
    code, out, _ = run(capsys, "witness", "--file", write(tmp_path, {"forms": SUM, "measures": [1, 1, 1]}))
    assert code == 4


def test_fuzz(capsys):
    code, out, _ = run(capsys, "fuzz", "--suite", "bll", "--instances", "30", "--seed", "7", "--n-range", "3-4")
    assert code == 0 and out["checked"] == 30 and out["violations"] == 0
    code, out, _ = run(capsys, "fuzz", "--instances", "0")
    assert code == 2


def test_console_entry_point(tmp_path):
    path = write(tmp_path, {"forms": SUM, "measures": [1, 1, 1]})
    res = subprocess.run([sys.executable, "-m", "bll_equality.cli", "admissible", "--file", path],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["verdict"] == "strictly_admissible"
