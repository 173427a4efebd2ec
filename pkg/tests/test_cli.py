import json

import pytest

from cometic import fixtures
from cometic import serialize as io
from cometic.category import automorphism_category
from cometic.cli import main
from cometic.lift import inclusion_functor


@pytest.fixture
def docs(tmp_path):
    io.write_json(tmp_path / "c2.json", io.poset_doc(fixtures.chain(2)))
    io.write_json(tmp_path / "dia.json", io.poset_doc(fixtures.diamond()))
    io.write_json(tmp_path / "cyc.json", io.poset_doc(fixtures.quasiorders_with_cycles()["cycle-pq"]))
    io.write_json(tmp_path / "cat.json", io.category_doc(fixtures.example_category_small()))
    F = inclusion_functor(automorphism_category("C", fixtures.chain(2)), {"C": fixtures.chain(2)})
    io.write_json(tmp_path / "tcat.json", io.category_doc(F.category))
    io.write_json(tmp_path / "tfun.json", io.functor_doc(F))
    return tmp_path


def test_validate(docs, capsys):
    assert main(["validate", str(docs / "c2.json")]) == 0
    assert main(["validate", str(docs / "cat.json")]) == 0
    (docs / "broken.json").write_text("{", encoding="utf-8")
    assert main(["validate", str(docs / "broken.json")]) == 2
    assert "line 1" in capsys.readouterr().err


def test_validate_non_lattice(docs):
    io.write_json(docs / "p.json", {"elements": ["0", "a", "b"], "le": [["0", "a"], ["0", "b"]]})
    assert main(["validate", str(docs / "p.json"), "--kind", "poset"]) == 0
    assert main(["validate", str(docs / "p.json")]) == 2


def test_princ(docs):
    out = docs / "princ.json"
    assert main(["princ", str(docs / "dia.json"), "-o", str(out)]) == 0
    doc = io.load_json(out)
    assert len(doc["elements"]) == 4 and len(doc["congruences"]) == 4


def test_gadget_verify_shipped(capsys):
    assert main(["gadget", "verify"]) == 0
    assert "PASS" in capsys.readouterr().out


def test_build_l_and_validate_output(docs):
    out = docs / "l.json"
    assert main(["build-l", "--quasiorder", str(docs / "cyc.json"), "-o", str(out)]) == 0
    doc = io.load_json(out)
    assert len(doc["elements"]) == 153
    assert main(["validate", str(out), "--kind", "colored"]) == 0


def test_build_n(docs):
    (docs / "h.json").write_text(json.dumps({"elements": ["0", "p", "1"]}), encoding="utf-8")
    (docs / "i.json").write_text(json.dumps([["p", "1"]]), encoding="utf-8")
    out = docs / "n.json"
    assert main(["build-n", "--colors", str(docs / "h.json"), "--I", str(docs / "i.json"), "-o", str(out)]) == 0
    assert ["p", ["a", "p"], ["b", "p"]] in io.load_json(out)["anchors"]


def test_cometic(docs, capsys):
    assert main(["cometic", "verify", str(docs / "cat.json")]) == 0
    out = docs / "img.json"
    assert main(["cometic", "image", str(docs / "cat.json"), "-o", str(out)]) == 0
    assert set(io.load_json(out)["objects"]) == {"C2", "C3"}


def test_lift_and_verify(docs, capsys):
    out = docs / "lifted"
    assert main(["lift", "--category", str(docs / "tcat.json"), "--functor", str(docs / "tfun.json"),
                 "-o", str(out)]) == 0
    assert io.load_json(out / "report.json")["ok"]
    assert main(["lift", "verify", str(out)]) == 0
    first = (out / "lattices" / "L0.json").read_text(encoding="utf-8")
    (out / "lattices" / "L0.json").write_text(first.replace('"bounded": true', '"bounded": false'),
                                              encoding="utf-8")
    assert main(["lift", "verify", str(out)]) == 1
    assert main(["lift"]) == 2


def test_export_dot_is_deterministic(docs, capsys):
    assert main(["export-dot", str(docs / "dia.json")]) == 0
    a = capsys.readouterr().out
    assert main(["export-dot", str(docs / "dia.json")]) == 0
    assert capsys.readouterr().out == a
    assert main(["export-dot", str(docs / "dia.json"), "--princ"]) == 0
    assert "nabla" in capsys.readouterr().out


def test_suite_exit_codes(docs, capsys):
    io.write_json(docs / "m.json", {"checks": [{"name": "k", "kind": "keylemma", "fixture": "chain2"}]})
    assert main(["suite", str(docs / "m.json"), "-o", str(docs / "r.json")]) == 0
    assert io.load_json(docs / "r.json")["ok"]
    io.write_json(docs / "m2.json", {"checks": [{"name": "k", "kind": "keylemma", "fixture": "chain2",
                                                 "expect": "fail"}]})
    assert main(["suite", str(docs / "m2.json")]) == 1


def test_size_cap_env(monkeypatch, docs):
    monkeypatch.setenv("COMETIC_CON_CAP", "2")
    from cometic.congruence import CongruenceError, con_lattice
    from cometic.order import lattice_from_poset

    with pytest.raises(CongruenceError):
        con_lattice(lattice_from_poset(fixtures.diamond()))
