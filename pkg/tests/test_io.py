import json

import pytest
from hypothesis import given
from strategies import lattices, posets, relations

from cometic import fixtures
from cometic import serialize as io
from cometic.congruence import princ_poset
from cometic.dot import export_dot
from cometic.gadgets import build_gadget
from cometic.nlattice import ColorUniverse, build_big, build_LHnu
from cometic.order import OrderError, lattice_from_poset, quasiorder_closure
from cometic.suite import default_manifest, run_suite


def test_two_chain_round_trip():
    doc = {"bounded": True, "elements": ["0", "1"], "le": [["0", "1"]]}
    assert json.loads(io.dumps(io.poset_doc(io.parse_poset(doc)))) == doc


@given(posets())
def test_poset_round_trip_is_canonical(P):
    text = io.dumps(io.poset_doc(P))
    assert io.dumps(io.poset_doc(io.parse_poset(json.loads(text)))) == text


@given(relations())
def test_quasiorder_round_trip(data):
    q = quasiorder_closure(*data)
    back = io.parse_quasiorder(json.loads(io.dumps(io.poset_doc(q))))
    assert back.relation() == q.relation()


@given(lattices())
def test_lattice_round_trip(L):
    assert io.parse_lattice(io.poset_doc(L)).relation() == L.relation()


def test_non_lattice_parses_as_poset_only():
    doc = {"elements": ["0", "a", "b", "c", "d", "1"],
           "le": [["0", "a"], ["0", "b"], ["a", "c"], ["a", "d"], ["b", "c"], ["b", "d"], ["c", "1"], ["d", "1"]]}
    io.parse_poset(doc)
    with pytest.raises(OrderError):
        io.parse_lattice(doc)


def test_schema_errors_carry_a_position():
    with pytest.raises(io.DocumentError) as e:
        io.parse_poset({"elements": ["0", "1"], "le": [["0"]]})
    assert e.value.path == "$.le[0]"
    with pytest.raises(io.DocumentError) as e:
        io.parse_poset({"elements": ["0"]})
    assert e.value.path == "$"


def test_cycle_in_a_poset_document_is_rejected():
    with pytest.raises(io.DocumentError):
        io.parse_poset({"elements": ["x", "y"], "le": [["x", "y"], ["y", "x"]]})


def test_structured_labels_round_trip():
    big = build_LHnu(fixtures.chain(2))
    doc = json.loads(io.dumps(io.colored_doc(big.colored)))
    Q = io.parse_colored(doc)
    assert Q.lattice.relation() == big.lattice.relation()
    assert Q.gamma == big.colored.gamma


def test_blueprint_round_trip():
    g = build_gadget(2, "up", "p", "q")
    doc = io.blueprint_doc(g)
    h = io.parse_blueprint(json.loads(io.dumps(doc)))
    assert h.boundary == g.boundary and h.lattice.relation() == g.lattice.relation()


def test_category_round_trip_and_missing_identity():
    from cometic.category import validate_category

    C = fixtures.example_category_small()
    doc = io.category_doc(C)
    assert io.dumps(io.category_doc(io.parse_category(doc))) == io.dumps(doc)
    doc["morphisms"] = [m for m in doc["morphisms"] if not (m["src"] == "C3" and m["dst"] == "C3")]
    assert not validate_category(io.parse_category(doc)).ok


def test_functor_round_trip():
    F = fixtures.categorified_chain_functor()
    doc = io.functor_doc(F)
    G = io.parse_functor(json.loads(io.dumps(doc)), F.category)
    assert G.maps == F.maps
    assert io.dumps(io.functor_doc(G)) == io.dumps(doc)


def test_dot_for_two_chain():
    text = export_dot(fixtures.chain(2))
    assert text.count("->") == 1
    assert '"0" -> "1"' in text


def test_dot_for_small_n_has_frame_and_one_u_cluster():
    big = build_big(ColorUniverse(["0", "1"], {"0"}, {"1"}))
    text = export_dot(big.lattice, "N")
    labels = [line for line in text.splitlines() if "label=" in line and "subgraph" not in line]
    assert any('"frame"' in line for line in labels)
    assert sum("u, " in line or "<u," in line for line in labels) == 2  # up and dn halves of one double gadget
    assert export_dot(big.lattice, "N") == text


def test_dot_for_princ():
    L = lattice_from_poset(fixtures.chain(3))
    text = export_dot(princ_poset(L))
    assert "nabla" in text and "Delta" in text
    assert text.count("->") == 4


def test_empty_manifest_passes_with_warning():
    rep = run_suite({"checks": []})
    assert rep.ok and rep.warnings


def test_mutated_gadget_manifest_fails(tmp_path):
    g = build_gadget(2, "up", "p", "q")
    doc = io.blueprint_doc(g)
    # force a_p below b_q
    doc["le"].append([["a", "p"], ["b", "q"]])
    io.write_json(tmp_path / "bad.json", doc)
    manifest = {"checks": [{"name": "mutated", "kind": "gadget", "input": "bad.json"}]}
    rep = run_suite(manifest, tmp_path)
    assert not rep.ok
    assert rep.results[0].outcome == "fail"
    manifest["checks"][0]["expect"] = "fail"
    assert run_suite(manifest, tmp_path).ok


def test_budget_exhaustion_is_a_timeout():
    manifest = {"checks": [{"name": "a", "kind": "keylemma", "fixture": "chain3"},
                           {"name": "b", "kind": "keylemma", "fixture": "chain2"}]}
    rep = run_suite(manifest, budget=1e-3)
    assert [r.outcome for r in rep.results] == ["pass", "timeout"]
    assert not rep.ok


def test_default_manifest_names_are_unique():
    names = [c["name"] for c in default_manifest()["checks"]]
    assert len(names) == len(set(names))


def test_shipped_default_manifest_passes():
    rep = run_suite(default_manifest(), budget=300)
    assert rep.ok, "\n".join(rep.lines())
