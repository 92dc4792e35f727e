from __future__ import annotations

import json

from picdual.cli import main
from picdual.simplicial import torus


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err


def test_lca_dual(capsys):
    assert run(capsys, "lca-dual", '{"z":1}')[:2] == (0, '{"t":1}')


def test_group_cohomology_table(capsys):
    code, out, _ = run(capsys, "group-cohomology-tables", "--p", "3", "--max", "6")
    rep = json.loads(out)
    assert code == 0 and rep["schema"] == 1
    assert [r["group"] for r in rep["table"]] == ["Z", "0", "Z/3", "0", "Z/3", "0", "Z/3"]


def test_weights_table(capsys):
    code, out, _ = run(capsys, "group-cohomology-tables", "--p", "5", "--max", "4", "--weights")
    assert [r["weight"] for r in json.loads(out)["table"]] == [0, None, 1, None, 2]


def test_kcomplex(capsys):
    code, out, _ = run(capsys, "kcomplex", "--qmax", "8")
    assert code == 0
    assert json.loads(out)["cohomology"] == {"1": "Z", **{str(q): "0" for q in range(2, 9)}}


def test_snf_and_ext(capsys):
    code, out, _ = run(capsys, "snf", "[[2,4],[6,8]]")
    assert code == 0 and json.loads(out)["invariant_factors"] == [2, 4]
    code, out, _ = run(capsys, "ext", "[6]", "[4]")
    rep = json.loads(out)
    assert (rep["ext1"], rep["hom"], rep["tensor"]) == ("Z/2", "Z/2", "Z/2")


def test_picard_dual(capsys):
    pic = '{"Hminus1":{"t":1},"H0":{"z":1},"phi":[{"block":[0,0],"value":[3]}]}'
    code, out, _ = run(capsys, "picard-dual", pic, "--base", "T3")
    assert code == 0
    assert json.loads(out)["dual"]["phi"] == [{"block": [0, 0], "value": [-3]}]


def test_picard_unsupported_exit_1(capsys):
    code, _, err = run(capsys, "picard-dual", '{"Hminus1":{"finite":[2]},"H0":{"finite":[2]}}', "--base", "RP2")
    assert code == 1 and "invariant" in err


def test_tduality_files(capsys, tmp_path):
    base = tmp_path / "B.json"
    base.write_text(json.dumps(torus().to_json()))
    chern = tmp_path / "c.json"
    chern.write_text('{"n": 1, "components": [[0]]}')
    h = tmp_path / "h.json"
    h.write_text('{"e21": [[2]]}')
    code, out, _ = run(capsys, "tduality", "classify", "--base", str(base), "--chern", str(chern), "--h", str(h))
    rep = json.loads(out)
    assert code == 0 and rep["dualizable"] and rep["gamma_order"] == 1
    assert rep["duals"] == [{"c_hat": [[2]], "orbit": {"gamma": "0", "representative_u": []}}]
    code, out, _ = run(capsys, "tduality", "check-exactness", "--base", str(base), "--chern", str(chern))
    assert code == 0 and json.loads(out)["ok"]


def test_malformed_input_exit_2(capsys):
    assert run(capsys, "lca-dual", "{not json")[0] == 2
    assert run(capsys, "lca-dual", '{"q":1}')[0] == 2
    assert run(capsys, "snf", '[[1,2],[3]]')[0] == 2
    assert run(capsys, "tduality-classify", "--base", "S2", "--chern", '{"n":1}')[0] == 2
    assert run(capsys, "group-cohomology-tables", "--p", "4")[0] == 2
    assert run(capsys, "no-such-command")[0] == 2


def test_bad_ring_exit_1(capsys, tmp_path):
    from picdual.simplicial import exterior_ring

    data = exterior_ring(2).to_json()
    data["cup"]["1,1"] = [[[0], [1]], [[1], [0]]]
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(data))
    assert run(capsys, "tduality-classify", "--base", str(p), "--chern", '{"n":1,"components":[[0]]}')[0] == 1


def test_output_dir_and_determinism(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("PICDUAL_OUT_DIR", str(tmp_path))
    _, first, _ = run(capsys, "tduality-classify", "--base", "T3", "--chern", '{"n":2,"components":[[1,0,0],[0,1,0]]}')
    _, second, _ = run(capsys, "tduality-classify", "--base", "T3", "--chern", '{"n":2,"components":[[1,0,0],[0,1,0]]}')
    assert first == second
    assert (tmp_path / "tduality-classify.json").read_text().strip() == first
    out = tmp_path / "x" / "r.json"
    run(capsys, "kcomplex", "--out", str(out))
    assert json.loads(out.read_text())["command"] == "kcomplex"
