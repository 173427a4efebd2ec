import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cometic import fixtures
from cometic.congruence import is_simple
from cometic.nlattice import (MNH_A1, MNH_ANTI, MNH_B1, ColorUniverse, UniverseError, anti_automorphism,
                              build_big, build_frame, build_LHnu, build_mnh, build_n_minus, check_big,
                              gluing_steps, hz_sets, is_selfdual_big, mnh_label, zeta_iso)
from cometic.order import automorphisms, is_order_iso

# element counts of L(H) frozen from the first verified build
FROZEN_SIZES = {"chain2": 49, "chain3": 83, "diamond": 117, "chain4": 135, "cycle-pq": 153, "two-least": 132}


def _cases():
    return {**fixtures.bounded_posets_upto4(), **fixtures.quasiorders_with_cycles()}


def test_frame_simple_part():
    M = build_mnh()
    assert len(M) == 14 and M.length() == 5
    assert is_simple(M)
    assert len(automorphisms(M)) == 4
    anti = {mnh_label(x): mnh_label(y) for x, y in MNH_ANTI.items()}
    assert is_order_iso(M, M.dual_poset(), anti)
    assert M.le(mnh_label(MNH_A1), mnh_label(MNH_B1))
    assert M.interval_length(mnh_label(MNH_A1), mnh_label(MNH_B1)) == 1


@pytest.mark.parametrize("name", sorted(FROZEN_SIZES))
def test_frozen_sizes(name):
    assert len(build_LHnu(_cases()[name]).lattice) == FROZEN_SIZES[name]


def test_n_minus_and_frame_for_2_chain():
    uni = ColorUniverse(["0", "1"], {"0"}, {"1"})
    assert len(build_n_minus(uni)) == 14 + 3
    frame = build_frame(uni)
    assert frame.lattice.length() == 5
    assert "1'" in frame.anchors


@settings(max_examples=10, deadline=None)
@given(st.randoms(use_true_random=False))
def test_gluing_order_does_not_matter(rnd):
    H = fixtures.diamond()
    base = build_LHnu(H, color=False)
    steps = gluing_steps(base.universe)
    rnd.shuffle(steps)
    again = build_big(base.universe, color=False, order=steps)
    assert again.lattice.relation() == base.lattice.relation()


def test_partial_universe_matches_its_closure():
    # only p <= q is forced between the middle colors, on top of Z x H and H x U
    H = ["0", "p", "q", "1"]
    uni = ColorUniverse(H, {"0"}, {"1"}, {("p", "q")}, {("p", "q")})
    big = build_big(uni)
    rep = check_big(big)
    assert rep.ok, str(rep)
    assert big.nu.le("p", "q") and not big.nu.le("q", "p")
    assert len(zeta_iso(big)) == 4


def test_up_only_universe_is_not_checked_for_selfduality():
    uni = ColorUniverse(["0", "p", "1"], {"0"}, {"1"}, {("p", "1")}, set())
    big = build_big(uni)
    assert check_big(big).ok
    assert not is_selfdual_big(big)


@pytest.mark.parametrize("name", ["chain3", "cycle-pq", "two-greatest"])
def test_anti_automorphism_is_an_involution(name):
    big = build_LHnu(_cases()[name])
    f = anti_automorphism(big)
    assert all(f[f[x]] == x for x in big.lattice.elements)


def test_hz_sets():
    Z, U = hz_sets(_cases()["two-least"])
    assert Z == {"0", "z"} and U == {"1"}


@pytest.mark.parametrize("kw,msg", [
    (dict(H=["0", "1"], Z={"1"}, U={"1"}), "0 in Z"),
    (dict(H=["0", "p", "1"], Z={"0", "p"}, U={"p", "1"}), "disjoint"),
    (dict(H=["0", "p", "1"], Z={"0"}, U={"1"}, I={("p", "p")}), "diagonal"),
    (dict(H=["0", "p", "1"], Z={"0"}, U={"1"}, I={("p", "0")}), "into Z"),
    (dict(H=["0", "p", "1"], Z={"0"}, U={"1"}, I={("p", "x")}), "leaves H"),
    (dict(H=["0", "1'", "1"], Z={"0"}, U={"1"}), "reserved"),
])
def test_invalid_universes(kw, msg):
    with pytest.raises(UniverseError, match=msg):
        ColorUniverse(**kw).validate()


def test_LHnu_needs_distinct_bounds():
    with pytest.raises(UniverseError):
        build_LHnu(fixtures.chain(2), "0", "0")
