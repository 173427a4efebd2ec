import pytest
from conftest import lifted

from cometic import fixtures
from cometic.category import SmallConcreteCategory, full_map_category
from cometic.lift import (LiftError, PosetFunctor, constrained_homomorphisms, hom_lift, image_category,
                          inclusion_functor, lift_functor, order_tag, tau_component, triplet_quasiorder,
                          validate_poset_functor)
from cometic.nlattice import MNH_MARKED, build_LHnu, mnh_label
from cometic.order import Poset

# lattice sizes of the lifted fixtures, frozen from the first verified run
FROZEN_LIFT_SIZES = {
    "categorified-chain": {"x": 49, "y": 234, "z": 603},
    "automorphisms": {"D": 504},
    "example-non-injective-mono": {"C2": 658, "C3": 83},
}


def test_order_tag_depends_on_the_order():
    a = fixtures.chain(3, ["0", "m", "1"])
    b = Poset.from_pairs(["0", "m", "1"], [("0", "1"), ("m", "1")])
    assert order_tag(a) == order_tag(fixtures.chain(3, ["0", "m", "1"]))
    assert order_tag(a) != order_tag(b)


def test_image_category_merges_equal_images():
    F = fixtures.categorified_chain_functor()
    img = image_category(F)
    assert len(img.C.objects) == 3
    # y <= z and the identity of y land in different hom-sets, nothing merges
    assert len(set(img.mor.values())) == len(F.category.morphisms)


def test_triplet_quasiorder_bounds():
    img = image_category(fixtures.example_functor())
    for Xc in img.C.objects:
        T = triplet_quasiorder(img, Xc)
        assert T.zero in T.Z and T.one in T.U
        assert T.zero != T.one


def test_functor_validation_catches_non_monotone_maps():
    F = fixtures.categorified_chain_functor()
    F.maps[("le", "y", "z")] = {"0": "0", "m": "0", "1": "0"}
    assert not validate_poset_functor(F).ok


def test_non_monomorphisms_are_rejected():
    C = full_map_category({"C2": fixtures.chain(2), "C3": fixtures.chain(3, ["0", "m", "1"])})
    F = inclusion_functor(C, {"C2": fixtures.chain(2), "C3": fixtures.chain(3, ["0", "m", "1"])})
    with pytest.raises(LiftError, match="monomorphism"):
        lift_functor(F)


def test_non_faithful_functors_are_rejected():
    C = SmallConcreteCategory({"X": ["u", "v"]})
    C.add_map("1", "X", "X", {"u": "u", "v": "v"})
    C.add_map("swap", "X", "X", {"u": "v", "v": "u"})
    ident = {"0": "0", "1": "1"}
    F = PosetFunctor(C, {"X": fixtures.chain(2)}, {"1": ident, "swap": dict(ident)})
    with pytest.raises(LiftError, match="faithful"):
        lift_functor(F)


@pytest.fixture(scope="module")
def smalls():
    return build_LHnu(fixtures.chain(2)), build_LHnu(fixtures.chain(3, ["0", "m", "1"])), \
        build_LHnu(fixtures.chain(4))


def test_hom_lift_rejects_bad_color_maps(smalls):
    L2, L3, L4 = smalls
    with pytest.raises(LiftError, match="monotone"):
        hom_lift(L4, L4, {"0": "0", "c1": "c2", "c2": "c1", "1": "1"})
    with pytest.raises(LiftError, match="least and greatest"):
        hom_lift(L2, L3, {"0": "0", "1": "m"})
    with pytest.raises(LiftError, match="injective"):
        hom_lift(L3, L2, {"0": "0", "m": "1", "1": "1"})
    with pytest.raises(LiftError):
        hom_lift(L2, L3, {"0": "0"})


def test_uniqueness_needs_the_marked_frame_elements(smalls):
    L2 = smalls[0]
    fixed = {}
    for p in L2.universe.H:
        a, b = L2.anchors[p]
        fixed[a], fixed[b] = a, b
    free = constrained_homomorphisms(L2.lattice, L2.lattice, fixed, limit=8)
    # the frame's automorphisms swapping x1/x2 and w2/w3 survive without marks
    assert len(free) == 4
    for m in MNH_MARKED:
        fixed[mnh_label(m)] = mnh_label(m)
    assert len(constrained_homomorphisms(L2.lattice, L2.lattice, fixed, limit=8)) == 1


@pytest.mark.parametrize("name", sorted(FROZEN_LIFT_SIZES))
def test_lifted_sizes(name):
    LF, _ = lifted(name)
    assert {X: len(LF.lattice(X)) for X in LF.F.category.objects} == FROZEN_LIFT_SIZES[name]


@pytest.mark.parametrize("name", sorted(FROZEN_LIFT_SIZES))
def test_tau_components_are_bijections(name):
    LF, _ = lifted(name)
    for X, P in LF.F.posets.items():
        t = tau_component(LF, X)
        assert len(set(t.values())) == len(P)


def test_lift_is_deterministic():
    LF, _ = lifted("automorphisms")
    again = lift_functor(fixtures.automorphism_functor(), verify=False)
    assert again.maps == LF.maps
    assert all(again.lattice(X).relation() == LF.lattice(X).relation() for X in LF.lattices)
