import json
import os
import subprocess
from fractions import Fraction

import pytest

import dysongraph as dg

SPEC = {"cocycles": [{"decoration": "g1", "omega": "1"}], "order": 3, "coupling": "1"}
K4 = {"n": 4, "edges": [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]}


def test_solve_example():
    doc = dg.solve(SPEC)
    grades = doc["grades"]
    assert [g["grade"] for g in grades] == [0, 1, 2, 3]
    # X_2 = 2 l_2
    assert grades[2]["sum"] == [{"coef": "2", "forest": [{"d": "g1", "c": [{"d": "g1", "c": []}]}]}]
    assert sum(Fraction(t["coef"]) for t in grades[3]["sum"]) == 5


def test_renormalized_ladders():
    rows = dg.renormalize(SPEC, {}, 2)
    finite = [[t for t in r["renormalized"]["terms"] if t["pow"] == 0][0]["coef"] for r in rows]
    assert finite == [[["-1", 1]], [["1", 2]]]


def test_tutte_and_trees():
    t = dg.tutte(K4)
    assert t[(("x", 3),)] == 1
    assert t[(("x", 1), ("y", 1))] == 4
    assert dg.spanning_tree_count(K4) == 16
    assert sum(t.values()) == 16


def test_psi_of_a_triangle():
    psi = dg.symanzik_psi({"n": 3, "edges": [[0, 1], [1, 2], [0, 2]]})
    assert psi == {(("w1", 1),): 1, (("w2", 1),): 1, (("w3", 1),): 1}


def test_graphon_values():
    k2 = {"measures": ["1/2", "1/2"], "values": [["0", "1"], ["1", "0"]]}
    assert dg.cut_norm(k2) == (Fraction(1, 2), True)
    assert dg.hom_density("A_", k2) == Fraction(1, 2)
    d = dg.cut_distance(k2, k2, "exact")
    assert d["value"] == 0 and d["certified"]


def test_haar():
    assert dg.haar_distance([1, 2], [2, 3], 8) == Fraction(5, 8)
    e = dg.ball_measure(Fraction(1, 2), 24, 20000, 7)
    assert e["within_bound"]
    assert dg.ball_measure("1/2", 24, 20000, 7, threads=3) == e


def test_errors_are_typed():
    with pytest.raises(dg.ValidationError):
        dg.solve({"cocycles": [{"decoration": "g1"}], "order": 0})
    with pytest.raises(dg.ParseError):
        dg._core.solve('{"cocycles": [')
    with pytest.raises(dg.TruncationError):
        dg.renormalize(SPEC, {"window": [-1, 2]}, 2)
    assert issubclass(dg.SizeError, dg.Error)


def test_run_is_reproducible():
    config = {"subcommand": "haar", "seed": 5, "samples": 5000, "format": "csv"}
    code, text = dg.run(config)
    assert code == 0
    assert dg.run(config, threads=4) == (code, text)
    header = json.loads(text.splitlines()[0][2:])
    assert header["provenance"] == "heuristic"


@pytest.mark.skipif(not os.environ.get("DYSONGRAPH_CLI"), reason="command-line tool not built")
def test_cli_matches_bindings(tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps(SPEC))
    out = subprocess.run([os.environ["DYSONGRAPH_CLI"], "solve", "--spec", str(spec)], capture_output=True, text=True, check=True)
    code, text = dg.run({"subcommand": "solve", "spec": SPEC})
    assert code == 0 and out.stdout == text
