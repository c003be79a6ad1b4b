import json
from fractions import Fraction

import pytest

from wschur.algebra import ONE, ZERO, A, DenomGen, Family, LocalizedElem, W, X, Y, family_sum
from wschur.grassmann import (IndexOutOfConfig, Mismatch, Report, WeightConfig, build_table,
                              evaluate_weights, killed, phi_n, pullback_check,
                              restriction_direct, restriction_via_phi, rho_pullback,
                              table_structure_constants, verify_homomorphism)
from wschur.partitions import Partition, rectangle

GENERIC = WeightConfig(2, 4, (1, 0, 2, 1), 2)
EQUAL = WeightConfig(2, 4, (1, 1, 1, 1), 2)
E2 = Partition.empty(2)
BOX = Partition.box(2)


def test_phi_examples():
    assert phi_n(A(3), GENERIC) == -Y(2)
    assert phi_n(A(5), GENERIC) == ZERO
    assert phi_n(W(2), GENERIC) == ONE
    assert phi_n(LocalizedElem.over(ONE, DenomGen.wlam(BOX)), GENERIC) == Fraction(1, 5)


def test_phi_rejects_x():
    with pytest.raises(ValueError):
        phi_n(X(1), GENERIC)


@pytest.mark.parametrize("bad", [
    dict(d=2, n=2, itw=(1, 1), u=1),
    dict(d=2, n=3, itw=(1, 1), u=1),
    dict(d=2, n=3, itw=(1, -1, 0), u=1),
    dict(d=2, n=3, itw=(1, 1, 0), u=0),
])
def test_config_validation(bad):
    with pytest.raises(ValueError):
        WeightConfig(**bad)


def test_restriction_examples():
    for mu in rectangle(2, 4):
        assert restriction_via_phi(E2, mu, GENERIC) == ONE
    assert restriction_via_phi(BOX, E2, GENERIC) == ZERO
    # w1, w2, w3 -> 2, 1, 3 and a1, a2, a3 -> -y4, -y3, -y2
    want = Fraction(3, 5) * (-Y(2) - Y(4)) + Y(3) + Y(4)
    assert restriction_via_phi(BOX, BOX, GENERIC) == want


@pytest.mark.parametrize("cfg", [GENERIC, EQUAL], ids=["generic", "equal"])
def test_direct_formula_matches_composite(cfg):
    for lam in rectangle(2, 4):
        for mu in rectangle(2, 4):
            assert restriction_direct(lam, mu, cfg) == restriction_via_phi(lam, mu, cfg)


def test_small_table():
    table = build_table(WeightConfig(2, 3, (1, 0, 2), 2))
    assert table.partitions == [E2, BOX, Partition.of(2, [1, 1])]
    assert table.row(E2) == [ONE, ONE, ONE]
    assert table.summary() == {"triangular": True, "diagonalNonzero": True, "homogeneous": True}
    obj = json.loads(json.dumps(table.to_json()))
    assert obj["columns"] == [[2, 3], [1, 3], [1, 2]]
    assert obj["rows"][1]["cells"][0] == "0"
    csv_lines = table.to_csv().splitlines()
    assert csv_lines[1] == "lambda,{2 3},{1 3},{1 2}"
    assert csv_lines[2] == "0 0,1,1,1"


def test_parallel_table_matches_sequential():
    cfg = WeightConfig(2, 3, (1, 0, 2), 2)
    assert build_table(cfg, workers=2).entries == build_table(cfg, workers=1).entries


def test_evaluated_one_box():
    d = 2
    xs = family_sum(Family.X, [1, 2])
    z3 = LocalizedElem.over(3 * xs, DenomGen.vch(d))
    assert evaluate_weights(BOX, GENERIC) == z3 - A(1) - A(2)
    assert evaluate_weights(BOX, GENERIC, factorial=False) == z3
    assert evaluate_weights(E2, GENERIC) == LocalizedElem(ONE)


def test_evaluate_out_of_config():
    with pytest.raises(IndexOutOfConfig):
        evaluate_weights(Partition.of(2, [5]), GENERIC)


def test_homomorphism_box_square():
    report = verify_homomorphism(GENERIC, BOX, BOX)
    assert report.ok, report.failures()


def test_outside_rectangle_killed():
    assert killed(Partition.of(2, [3]), GENERIC)
    assert verify_homomorphism(GENERIC, Partition.of(2, [3]), BOX).ok


def test_table_solve_box_square():
    table = build_table(GENERIC)
    coeffs = table_structure_constants(table, BOX, BOX)
    # w_ch / w_box -> (2 + 1) / (3 + 2)
    assert coeffs[Partition.of(2, [2])] == Fraction(3, 5)
    assert coeffs[Partition.of(2, [1, 1])] == Fraction(3, 5)


def test_pullback():
    assert rho_pullback(Y(1) * Y(3) + Y(2), 3) == Y(1)
    report = pullback_check(GENERIC)
    assert report.ok, report.failures()


def test_report_require():
    r = Report("x")
    r.add("fine", True)
    assert r.require() is r
    r.add("broken", False, "detail")
    with pytest.raises(Mismatch):
        r.require()
