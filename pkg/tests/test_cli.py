import json
from pathlib import Path

import jsonschema
import pytest

from wschur import cli
from wschur.algebra import MembershipViolation, NotDivisible
from wschur.expansion import NotInSpan

SCHEMA = json.loads((Path(__file__).resolve().parents[1] / "docs" / "schema.json").read_text())


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_schur_weighted_factorial(capsys):
    code, out, _ = run(capsys, "schur", "--d", "2", "--lambda", "1,0", "--variant", "weighted-factorial")
    assert code == 0
    assert out == "(x1*w1 + x1*w2 + x2*w1 + x2*w2 - a1*v1 - a1*v2 - a2*v1 - a2*v2)/(v1 + v2)\n"


def test_schur_ordinary_empty(capsys):
    assert run(capsys, "schur", "--d", "2", "--lambda", "0,0", "--variant", "ordinary")[:2] == (0, "1\n")


@pytest.mark.parametrize("variant", ["factorial", "weighted", "weighted-factorial"])
def test_schur_det_equals_tableaux(capsys, variant):
    _, det, _ = run(capsys, "schur", "--lambda", "2,0", "--variant", variant, "--form", "det")
    _, tab, _ = run(capsys, "schur", "--lambda", "2,0", "--variant", variant, "--form", "tableaux")
    assert det == tab


@pytest.mark.parametrize("argv", [
    ["schur", "--lambda", "1,2"],
    ["schur", "--lambda", "a"],
    ["schur", "--d", "0", "--lambda", "1"],
    ["restrict", "--n", "3", "--itw", "1,0"],
    ["restrict", "--n", "2"],
])
def test_invalid_input_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_expand_two_alphabets(capsys):
    code, out, _ = run(capsys, "expand", "--lambda", "1", "--mu", "1", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    jsonschema.validate(obj, SCHEMA)
    values = {tuple(c["partition"]): c["value"] for c in obj["coefficients"]}
    assert values == {(1, 0): "a1 + a3 - ap1 - ap2", (2, 0): "1", (1, 1): "1"}


def test_expand_empty_factor(capsys):
    _, out, _ = run(capsys, "expand", "--lambda", "0", "--mu", "2,1", "--format", "json")
    assert [c["partition"] for c in json.loads(out)["coefficients"]] == [[2, 1]]


def test_expand_weighted_closure(capsys):
    code, out, _ = run(capsys, "expand", "--lambda", "1", "--mu", "1,1", "--basis", "weighted",
                       "--format", "json")
    obj = json.loads(out)
    assert code == 0 and obj["residualZero"] is True and obj["basis"] == "Weighted"


def test_expand_routes_print_the_same(capsys):
    a = run(capsys, "expand", "--lambda", "1,1", "--basis", "weighted")[1]
    b = run(capsys, "expand", "--lambda", "1,1", "--basis", "weighted", "--route", "pieri")[1]
    assert a == b


@pytest.mark.parametrize("exc,code", [(NotInSpan, 4), (MembershipViolation, 5), (NotDivisible, 3)])
def test_error_exit_codes(capsys, monkeypatch, exc, code):
    def boom(*args, **kwargs):
        raise exc("forced")
    monkeypatch.setattr(cli, "structure_constants", boom)
    assert run(capsys, "expand", "--lambda", "1", "--mu", "1")[0] == code


def test_restrict_table(capsys, tmp_path):
    code, out, err = run(capsys, "restrict", "--d", "2", "--n", "3", "--itw", "1,0,2", "--u", "2",
                         "--format", "json")
    assert code == 0
    obj = json.loads(out)
    jsonschema.validate(obj, SCHEMA)
    assert len(obj["rows"]) == 3 and obj["rows"][0]["cells"] == ["1", "1", "1"]
    assert "triangular=true" in err
    target = tmp_path / "table.csv"
    code, out, _ = run(capsys, "restrict", "--n", "3", "--itw", "1,0,2", "--format", "csv",
                       "--output", str(target))
    assert code == 0 and "triangular=true" in out
    assert target.read_text().splitlines()[2] == "0 0,1,1,1"


def test_restrict_zero_cells(capsys):
    _, out, _ = run(capsys, "restrict", "--n", "4", "--itw", "1,0,2,1", "--format", "json")
    obj = json.loads(out)
    for i, row in enumerate(obj["rows"]):
        for j, cell in enumerate(row["cells"]):
            lam, mu = row["partition"], obj["rows"][j]["partition"]
            if any(m < l for m, l in zip(mu, lam)):
                assert cell == "0"


@pytest.mark.parametrize("argv", [
    ["verify", "--suite", "vanishing", "--d", "2", "--max-size", "4"],
    ["verify", "--suite", "pieri", "--d", "2", "--max-size", "3"],
    ["verify", "--suite", "homomorphism", "--d", "2", "--n", "4", "--itw", "1,0,2,1", "--u", "2"],
])
def test_verify_examples(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out.startswith("PASS")


def test_verify_json_and_determinism(capsys):
    argv = ["verify", "--suite", "basis", "--max-size", "2", "--format", "json"]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second and first[0] == 0
    jsonschema.validate(json.loads(first[1]), SCHEMA)


def test_verify_failure_exit_1(capsys, monkeypatch):
    from wschur.grassmann import Report

    def failing(*args, **kwargs):
        r = Report("forced")
        r.add("a check", False, "counterexample text")
        return [r]
    monkeypatch.setattr(cli, "run_suite", failing)
    code, out, _ = run(capsys, "verify", "--suite", "pieri")
    assert code == 1
    assert "FAIL forced" in out and "counterexample: a check: counterexample text" in out


def test_schur_json(capsys):
    _, out, _ = run(capsys, "schur", "--lambda", "1", "--variant", "weighted", "--format", "json")
    jsonschema.validate(json.loads(out), SCHEMA)
