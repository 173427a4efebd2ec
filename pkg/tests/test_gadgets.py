import pytest

from cometic.congruence import con_lattice
from cometic.gadgets import (BLUEPRINT_COVERS, GadgetError, GlueError, blueprint_lattice, build_gadget, glue,
                             glue_preconditions, rank_projection, verify_gadget, width_condition)
from cometic.order import Lattice, OrderError, is_homomorphism, is_selfdual
from cometic.gadgets import _rank_quotient, BLUEPRINT_BOUNDARY

# covers whose deletion breaks the blueprint (found by exhaustive single deletion)
LOAD_BEARING = [("u", "v0"), ("u", "x0"), ("v0", "v1"), ("v0", "c"), ("v1", "x1"), ("v1", "d"),
                ("ap", "c"), ("ap", "bp"), ("bp", "d"), ("c", "d"), ("aq", "bq"), ("aq", "x0"),
                ("bq", "x1"), ("x0", "x1")]


@pytest.mark.parametrize("rank", [0, 1, 2])
@pytest.mark.parametrize("orientation", ["up", "dn", "double"])
def test_every_variant_meets_its_contract(rank, orientation):
    rep = verify_gadget(build_gadget(rank, orientation, "p", "q"))
    assert rep.ok, str(rep)


def test_blueprint_sizes():
    G = blueprint_lattice()
    assert len(G) == 15 and G.length() == 5
    assert len(con_lattice(G)) == 4
    sizes = {r: len(_rank_quotient(G, r, BLUEPRINT_BOUNDARY)) for r in (2, 1, 0)}
    assert sizes == {2: 15, 1: 12, 0: 9}
    assert len(build_gadget(2, "double", "p", "q").lattice) == 24


def test_lower_rank_quotients_are_shorter():
    G = blueprint_lattice()
    assert _rank_quotient(G, 1, BLUEPRINT_BOUNDARY).length() == 4
    assert _rank_quotient(G, 0, BLUEPRINT_BOUNDARY).length() == 3


@pytest.mark.parametrize("rank", [0, 1, 2])
def test_double_gadgets_are_selfdual(rank):
    assert is_selfdual(build_gadget(rank, "double", "p", "q").lattice)


@pytest.mark.parametrize("cover", LOAD_BEARING)
def test_mutated_blueprint_is_rejected(cover):
    covers = tuple(c for c in BLUEPRINT_COVERS if c != cover)
    try:
        rep = verify_gadget(build_gadget(2, "up", "p", "q", covers=covers))
    except OrderError:
        return
    assert not rep.ok


@pytest.mark.parametrize("hi,lo", [(2, 1), (2, 0), (1, 0), (2, 2)])
def test_rank_projection_is_a_homomorphism(hi, lo):
    G = blueprint_lattice()
    src = _rank_quotient(G, hi, BLUEPRINT_BOUNDARY)
    dst = _rank_quotient(G, lo, BLUEPRINT_BOUNDARY)
    proj = rank_projection(hi, lo)
    assert is_homomorphism(src, dst, proj) is None


def test_projection_only_goes_down():
    with pytest.raises(GadgetError):
        rank_projection(0, 2)


def test_bad_gadget_arguments():
    with pytest.raises(GadgetError):
        build_gadget(2, "up", "p", "p")
    with pytest.raises(GadgetError):
        build_gadget(3, "up", "p", "q")
    with pytest.raises(GadgetError):
        build_gadget(2, "sideways", "p", "q")


def test_width_condition_on_blueprint():
    g = build_gadget(2, "up", "p", "q")
    assert width_condition(g.lattice, g.B) == (True, None)


def _host():
    """Two disjoint 3-chains 0 < a_p < b_p < 1 and 0 < a_q < b_q < 1 (a 6-element lattice)."""
    return Lattice.from_pairs(["0", ("a", "p"), ("b", "p"), ("a", "q"), ("b", "q"), "1"],
                              [("0", ("a", "p")), (("a", "p"), ("b", "p")), (("b", "p"), "1"),
                               ("0", ("a", "q")), (("a", "q"), ("b", "q")), (("b", "q"), "1")])


def test_preconditions_check_the_rank():
    L = _host()
    assert glue_preconditions(L, ("a", "p"), ("b", "p"), ("a", "q"), ("b", "q"), 2).ok
    assert not glue_preconditions(L, ("a", "p"), ("b", "p"), ("a", "q"), ("b", "q"), 1).ok


@pytest.mark.parametrize("orientation", ["up", "dn"])
def test_rank2_glue_into_host(orientation):
    res = glue(_host(), build_gadget(2, orientation, "p", "q"))
    assert not res.formula_mismatches()
    assert res.lattice.length() == 5


@pytest.mark.parametrize("orientation", ["up", "dn"])
def test_rank1_glue_into_host(orientation):
    L = Lattice.from_pairs(["0", ("a", "p"), ("a", "q"), ("b", "q"), "1"],
                           [("0", ("a", "p")), (("a", "p"), "1"), ("0", ("a", "q")),
                            (("a", "q"), ("b", "q")), (("b", "q"), "1")])
    g = build_gadget(1, orientation, "p", "q")
    res = glue(L, g)
    assert not res.formula_mismatches()
    assert res.lattice.is_sublattice(L.elements) and res.lattice.is_sublattice(g.lattice.elements)


def test_double_cannot_be_glued_directly():
    with pytest.raises(GlueError):
        glue(_host(), build_gadget(1, "double", "p", "q"))


def test_gluing_keeps_congruence_inclusions_below_nabla():
    from cometic.congruence import CongruenceEngine
    from cometic.nlattice import ColorUniverse, _boundary, build_frame, gluing_steps

    H = ["0", "p", "q", "1"]
    uni = ColorUniverse(H, {"0"}, {"1"}, {("p", "q")}, {("p", "q")})
    frame = build_frame(uni)
    L = frame.lattice
    for (p, q), orientation in gluing_steps(uni):
        g = build_gadget(uni.rank(p, q), orientation, p, q, _boundary(frame.anchors, p, q))
        M = glue(L, g).lattice
        EL, EM = CongruenceEngine(L), CongruenceEngine(M)
        covers = L.covers()
        cl = {c: EL.cg(*c) for c in covers}
        cm = {c: EM.cg(*c) for c in covers}
        for e1 in covers:
            for e2 in covers:
                if cl[e1] & ~cl[e2] == 0 and cm[e2] != EM.full_mask():
                    assert cm[e1] & ~cm[e2] == 0
        L = M
