from pathlib import Path

import pytest

import pbpo

DATA = Path(__file__).resolve().parents[2] / "data"


def test_flagship_reduction():
    tree = pbpo.decision_tree("0001", ["p", "q"])
    assert tree.graph.node_count == 7
    reduced, steps = pbpo.reduce(tree)
    assert (reduced.graph.node_count, steps) == (4, 3)
    assert reduced.is_reduced()
    assert pbpo.is_isomorphic(reduced.graph, pbpo.oracle_reduce("0001", ["p", "q"]).graph)
    for p in (False, True):
        for q in (False, True):
            assert reduced.evaluate({"p": p, "q": q}) == (p and q)


def test_label_example():
    ws = pbpo.load(DATA / "relabel.json")
    rule = ws.rule("to_x1")
    matches = pbpo.find_matches(rule, ws.graph("host_x2"))
    assert len(matches) == 1
    assert pbpo.apply(rule, matches[0]).nodes == [("v", "x1")]
    assert pbpo.find_matches(rule, ws.graph("host_0")) == []


def test_round_trip_and_squares():
    ws = pbpo.load(DATA / "gluing.json")
    assert pbpo.loads(ws.serialize()) == ws
    assert ws.check_square("pushout_H")
    assert not ws.check_square("candidate_H1")


def test_lattice_and_errors():
    lat = pbpo.bdd_lattice(["x", "y"])
    assert lat.join("x", "y") == "VAR"
    assert lat.meet("0", "1") == "BOT"
    assert lat.validate() == []
    with pytest.raises(pbpo.PbpoError) as info:
        pbpo.bdd_lattice(["x", "x"])
    assert info.value.kind == "duplicate-variable"
    with pytest.raises(pbpo.PbpoError):
        pbpo.loads("{")


def test_normalize_with_rule_list():
    tree = pbpo.decision_tree("0110", ["a", "b"])
    rules = pbpo.bdd_reduction_rules(["a", "b"])
    graph, steps, fixpoint = pbpo.normalize(tree.graph, rules)
    assert fixpoint
    assert steps == tree.graph.node_count - graph.node_count
    assert pbpo.validate_bdd(graph) == []
