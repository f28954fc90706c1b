import io
import json

import pytest

from dendro.cli import run
from dendro.operads import morphism_to_json, operad_to_json, operad_from_category
from dendro.categories import arrow
from dendro.catalogue import (z2_sum_algebra, planted_category_over_arrow, planted_two_targets,
                              z2_action_groupoid, set_algebras, tree_algebras)


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    def put(name, content):
        p = tmp_path / name
        p.write_text(content if isinstance(content, str) else json.dumps(content))
        return p
    put("eta.tree", "(edge e)")
    put("C2.tree", "(node e0 e1 e2)")
    put("C3.tree", "(node e0 e1 e2 e3)")
    put("V.tree", "(node r (node e a b) c)")
    put("C1.tree", "(node e0 e1)")
    put("bad.tree", "(node r\n  (frob a))")
    put("alg.json", z2_sum_algebra().to_json())
    put("fgu.json", morphism_to_json(planted_category_over_arrow()))
    put("split.json", morphism_to_json(planted_two_targets()))
    put("action.json", morphism_to_json(z2_action_groupoid()))
    put("set.json", set_algebras()[0][2].to_json())
    put("arrow.json", operad_to_json(operad_from_category(arrow(1))))
    put("talg.json", tree_algebras()[0].to_json())
    put("broken.json", '{"colours": [')
    return tmp_path


def test_shuffle_count(files):
    code, out, _ = call("shuffle", "count", files / "C2.tree", files / "C3.tree", "--format", "text")
    assert code == 0 and out.strip() == "2"
    code, out, _ = call("shuffle", "list", files / "C1.tree", files / "C1.tree")
    rows = json.loads(out)
    assert len(rows) == 2 and all("(pair" in r["tree"] for r in rows)
    code, out, _ = call("shuffle", "poset", files / "V.tree", files / "C2.tree", "--format", "dot")
    assert code == 0 and out.startswith("digraph")


def test_tree_commands(files):
    code, out, _ = call("tree", "faces", files / "eta.tree")
    assert code == 0 and json.loads(out) == []
    code, out, _ = call("tree", "faces", files / "V.tree")
    assert sorted(r["label"]["kind"] for r in json.loads(out)) == ["inner", "leaf", "root"]
    code, out, _ = call("tree", "show", files / "V.tree", "--format", "dot")
    assert "digraph" in out
    code, out, _ = call("tree", "auto", files / "V.tree")
    assert json.loads(out)["count"] == 2
    code, out, _ = call("tree", "graft", files / "C2.tree", "--leaf", "e1", "--other", files / "V.tree")
    assert code == 0 and len(json.loads(out)["leaves"]) == 4
    code, out, _ = call("tree", "spine", files / "V.tree")
    assert len(json.loads(out)["corollas"]) == 2
    a = call("tree", "random", "--vertices", 3, "--seed", 5)[1]
    assert a == call("tree", "random", "--vertices", 3, "--seed", 5)[1]


def test_parse_errors_report_position(files):
    code, _, err = call("tree", "parse", files / "bad.tree")
    assert code == 2 and "line 2" in err and "column 4" in err
    code, _, err = call("nerve", files / "broken.json")
    assert code == 2 and "line 1" in err
    code, _, err = call("tree", "parse", files / "missing.tree")
    assert code == 2
    assert call("tree", "faces")[0] == 2
    assert call("bogus")[0] == 2


def test_check_verdicts(files):
    code, out, _ = call("check", "cocart", files / "fgu.json", "--bound", 3)
    assert code == 0 and json.loads(out)["ok"] is True
    code, out, _ = call("check", "left", files / "fgu.json", "--bound", 3)
    data = json.loads(out)
    assert code == 1 and data["ok"] is False and data["witness"]
    code, out, _ = call("check", "cocart", files / "split.json", "--bound", 3)
    assert code == 1
    code, out, _ = call("check", "left", files / "action.json", "--bound", 3, "--jobs", 2)
    assert code == 0
    code, out, _ = call("check", "marked", files / "fgu.json", "--bound", 3)
    assert code == 0 and json.loads(out)["agree"]


def test_groth_commands(files):
    code, out, _ = call("groth", "roundtrip", files / "alg.json")
    data = json.loads(out)
    assert code == 0 and data["unit"]["ok"] and data["counit"]["ok"]
    code, out, _ = call("groth", "roundtrip", files / "fgu.json", "--format", "text")
    assert code == 0 and "counit=True" in out
    code, out, _ = call("groth", "build", files / "alg.json")
    assert code == 0 and "source" in json.loads(out)
    code, out, _ = call("groth", "straighten", files / "fgu.json")
    assert code == 0 and "categories" in json.loads(out)
    code, out, _ = call("groth", "phi", files / "fgu.json")
    assert code == 0 and json.loads(out)["cleavage"]
    code, out, _ = call("groth", "phi", files / "split.json")
    assert code == 2
    code, out, _ = call("groth", "coyoneda", files / "set.json", "--colour", "e0")
    assert code == 0 and json.loads(out)["ok"]
    assert call("groth", "coyoneda", files / "set.json", "--colour", "zz")[0] == 2
    assert call("groth", "build", files / "fgu.json")[0] == 2


def test_nerve_and_tensor(files):
    code, out, _ = call("nerve", files / "arrow.json", "--bound", 2, "--max-arity", 2)
    assert code == 0 and json.loads(out)
    code, out, _ = call("tensor", files / "C1.tree", files / "C1.tree", "--bound", 2, "--max-arity", 2)
    data = json.loads(out)
    assert code == 0 and len(data["maximal"]) >= 2


def test_cubes_and_mapping_trees(files):
    # one coordinate per colour strictly above r
    code, out, _ = call("stcube", files / "V.tree", "r")
    assert sorted(json.loads(out)["coordinates"]) == ["a", "b", "c", "e"]
    assert call("stcube", files / "V.tree", "zz")[0] == 2
    code, out, _ = call("wspace", files / "V.tree", "--leaves", "a,b,c", "--root", "r")
    assert json.loads(out)["dim"] == 1
    code, out, _ = call("wspace", files / "V.tree", "--leaves", "a", "--root", "c")
    assert json.loads(out)["empty"]
    code, out, _ = call("maptree", files / "talg.json")
    data = json.loads(out)
    assert code == 0 and all(data["fibre_iso"].values())


def test_bound_from_environment(files, monkeypatch):
    monkeypatch.setenv("DENDRO_BOUND", "1")
    code, out, _ = call("nerve", files / "arrow.json", "--max-arity", 2)
    assert code == 0
    data1 = json.loads(out)
    code, out, _ = call("nerve", files / "arrow.json", "--max-arity", 2, "--bound", 2)
    assert json.loads(out) != data1
    monkeypatch.setenv("DENDRO_BOUND", "x")
    assert call("nerve", files / "arrow.json")[0] == 2
