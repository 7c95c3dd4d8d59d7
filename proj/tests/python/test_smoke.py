from fractions import Fraction

import pytest

import wbary

Q1 = {"X": ["x1"], "Y": ["y1"], "Z": ["z1"], "triples": [["x1", "y1", "z1"]]}


def test_square_example_value_and_methods_agree():
    sq = wbary.gen_square(6)
    values = {m: wbary.solve(sq, method=m)["value"] for m in ("lp", "2m", "auto")}
    assert set(values.values()) == {Fraction(9)}


def test_verify_accepts_and_rejects():
    sq = wbary.gen_square(6)
    cert = wbary.solve(sq)["measure"]
    assert wbary.verify(sq, cert, 3, 9)["accepted"]
    rep = wbary.verify(sq, cert, 3, Fraction(89, 10))
    assert not rep["accepted"] and rep["valid"] and not rep["cost_ok"]


def test_random_instances_match_lp():
    for seed in range(5):
        inst = wbary.gen_random([2, 3, 2], 1, 9, seed)
        assert wbary.solve(inst, "1d")["value"] == wbary.solve(inst, "lp")["value"]


def test_plan_for_solver_support():
    inst = wbary.gen_random([3, 3], 2, 20, 11)
    res = wbary.solve(inst, "lp")
    support = {"points": []}
    for e in res["measure"]["entries"]:
        coords = [sum(Fraction(w) * Fraction(mu["points"][k]["coords"][c])
                      for w, mu, k in zip(inst["weights"], inst["measures"], e["tuple"]))
                  for c in range(2)]
        support["points"].append({"mass": e["mass"], "coords": [str(x) for x in coords]})
    pr = wbary.plan(inst, support)
    assert pr["value"] == res["value"]


def test_tuple_cost_is_exact():
    sq = wbary.gen_square(6)
    assert wbary.tuple_cost(sq, [0, 0]) == Fraction(9)


def test_reduction_round_trip():
    red = wbary.reduce(Q1)
    assert red["n"] == 19
    dec = wbary.decide(red["instance"], red["n"], Fraction(50, 9), method="uc3p")
    assert dec["yes"]
    assert not wbary.decide(red["instance"], red["n"], Fraction(49, 9), method="uc3p")["yes"]
    out = wbary.decode(red["gadget"], dec["witness"])
    assert out["ok"]
    assert out["pattern"]["selected_triples"]
    svg = wbary.plot(red["gadget"], dec["witness"])
    assert svg.count('class="selected"') == 19


def test_errors_surface_as_python_exceptions():
    with pytest.raises(ValueError):
        wbary.solve({"d": 2})
    with pytest.raises(TypeError):
        wbary.verify(wbary.gen_square(6), {"entries": []}, 3, 0.5)
    with pytest.raises(ValueError):
        wbary.reduce({"X": ["x1"], "Y": ["y1"], "Z": ["z1"], "triples": [["x1", "y9", "z1"]]})
    with pytest.raises(wbary.CapExceeded, match="cap"):
        wbary.solve(wbary.gen_square(6), "lp", cap=3)
