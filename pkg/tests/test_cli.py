import json
import os

import pytest

from goodcones.cli import render_svg, run
from goodcones.serial import Document, document_from_json, document_to_json
from goodcones.construct import example_family


@pytest.fixture
def doc_path(tmp_path):
    cone, reeb = example_family(2)
    doc = Document(cone=cone, reeb=reeb, metadata={"name": "example-k2"})
    path = tmp_path / "ex2.json"
    path.write_text(json.dumps(document_to_json(doc)))
    return str(path)


def run_json(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def test_validate_good(capsys, doc_path):
    code, out = run_json(capsys, ["validate", doc_path])
    assert code == 0 and out["is_good"] is True


def test_validate_bad_cone_exits_1(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"normals": [[1, 0, 0], [0, 1, 0], [1, 1, 0]]}))
    code, out = run_json(capsys, ["validate", str(path)])
    assert code == 1 and out["is_good"] is False


def test_invariants(capsys, doc_path):
    code, out = run_json(capsys, ["invariants", doc_path, "--face", "1"])
    assert code == 0
    assert out["b"] == 2 and out["f"] == 0 and out["blowdown"] is False


def test_rank_and_profile(capsys, doc_path):
    code, out = run_json(capsys, ["rank", doc_path])
    assert code == 0 and out["rank"] == 2 and out["admissible"] is True
    code, out = run_json(capsys, ["profile", doc_path])
    assert code == 0
    assert out["v0"] == [1, 2, -1]
    assert out["k"] == [0, 2, 2, 0, 1]
    assert out["flats"] == [0, 3]


def test_graph_and_euler(capsys, doc_path):
    code, out = run_json(capsys, ["graph", doc_path])
    assert code == 0 and out["nontrivial_chains"] == 1
    code, out = run_json(capsys, ["euler-check", doc_path])
    assert code == 0 and out["ok"] is True
    assert out["lhs"] == out["rhs"] == "1/2"


def test_blowdown_obstruction_exit1(capsys, doc_path):
    code = run(["blowdown", doc_path, "--face", "1"])
    captured = capsys.readouterr()
    assert code == 1
    body = json.loads(captured.out)
    assert any(f["kind"] == "delzant-pair" for f in body["failures"])


def test_blowup_and_plan(capsys, tmp_path):
    simp = tmp_path / "simp.json"
    simp.write_text(json.dumps({"normals": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}))
    code, out = run_json(capsys, ["blowup", str(simp), "--t=-1,1,1"])
    assert code == 0 and out["kind"] == "orbit-blowup"

    cone, reeb = example_family(3)
    from goodcones.serial import Document, document_to_json

    fam = tmp_path / "fam3.json"
    fam.write_text(json.dumps(document_to_json(Document(cone=cone, reeb=reeb))))
    code, out = run_json(capsys, ["plan", str(fam), "--keep", "0,4,5"])
    assert code == 0
    assert len(out["steps"]) == 4
    assert len(out["final"]["normals"]) == 4


def test_construct_and_close(capsys, tmp_path):
    code, out = run_json(capsys, ["construct", "--family", "example", "--k", "2"])
    assert code == 0
    assert out["cone"]["normals"][0] == [1, 0, 1]
    code, out = run_json(capsys, ["construct", "--family", "obstructed", "--k", "3", "--seed", "5"])
    assert code == 0 and len(out["cone"]["normals"]) == 6

    chain = tmp_path / "chain.json"
    chain.write_text(json.dumps({"normals": [[0, 1, 0], [-1, 1, 1], [0, 0, 1]]}))
    code, out = run_json(capsys, ["close", str(chain)])
    assert code == 0 and len(out["cone"]["normals"]) == 4


def test_toric_check(capsys):
    code, out = run_json(capsys, ["toric-check", "--vmin", "1,0", "--vmax", "0,1"])
    assert code == 0 and out["v"] == [1, 1]
    code, out = run_json(capsys, ["toric-check", "--vmin", "1,0", "--vmax", "-1,0"])
    assert code == 2  # parallel rays are a usage error

def test_render_deterministic(tmp_path, doc_path, capsys):
    out1 = tmp_path / "a.svg"
    out2 = tmp_path / "b.svg"
    assert run(["render", doc_path, "--out", str(out1)]) == 0
    assert run(["render", doc_path, "--out", str(out2)]) == 0
    capsys.readouterr()
    assert out1.read_bytes() == out2.read_bytes()
    body = out1.read_text()
    assert body.startswith("<svg") and body.count("<line") == 5
    assert "(flat)" in body


def test_render_requires_reeb(tmp_path, capsys):
    path = tmp_path / "bare.json"
    path.write_text(json.dumps({"normals": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}))
    code = run(["render", str(path), "--out", str(tmp_path / "x.svg")])
    capsys.readouterr()
    assert code == 2


def test_catalog_roundtrip(tmp_path, doc_path, capsys):
    store = str(tmp_path / "store")
    code, out = run_json(capsys, ["catalog", "add", doc_path, "--store", store])
    assert code == 0
    digest = out["hash"]
    code, listing = run_json(capsys, ["catalog", "list", "--store", store])
    assert code == 0 and listing[0]["hash"] == digest
    code, got = run_json(capsys, ["catalog", "get", digest, "--store", store])
    assert code == 0
    original = json.loads(open(doc_path).read())
    assert got["cone"] == original["cone"]
    # adding the identical document is idempotent
    code, out = run_json(capsys, ["catalog", "add", doc_path, "--store", store])
    assert code == 0 and out["hash"] == digest


def test_catalog_rejects_invalid(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"normals": [[1, 0, 0], [0, 1, 0], [1, 1, 0]]}))
    code = run(["catalog", "add", str(bad), "--store", str(tmp_path / "s")])
    capsys.readouterr()
    assert code == 1


def test_malformed_json_exit2(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text('{"normals": [[1,0,0],')
    code = run(["validate", str(path)])
    err = capsys.readouterr().err
    assert code == 2
    assert "line" in err and "column" in err


def test_serialization_roundtrip(doc_path):
    original = json.loads(open(doc_path).read())
    doc = document_from_json(original)
    assert document_to_json(doc) == original
