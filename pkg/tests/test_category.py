import itertools

import pytest

from hypothesis import given, settings
from hypothesis import strategies as st

from cometic import fixtures
from cometic.category import (CategoryError, SmallConcreteCategory, check_faithfulness, cometic_functor,
                              cometic_object, cometic_projection, is_injective, is_monomorphism,
                              naturality_failures, validate_category, verify_theorem_thmcat)



def monoid_category(gens, n: int) -> SmallConcreteCategory:
    """One object {0..n-1} with the transformation monoid generated by ``gens``."""
    ident = tuple(range(n))
    maps = {ident} | {tuple(g) for g in gens}
    while True:
        new = {tuple(g[f[i]] for i in range(n)) for f in maps for g in maps} - maps
        if not new:
            break
        maps |= new
    C = SmallConcreteCategory({"X": list(range(n))})
    for k, m in enumerate(sorted(maps)):
        C.add_map(f"t{k}", "X", "X", dict(enumerate(m)))
    return C


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.lists(st.integers(0, n - 1), min_size=n, max_size=n), max_size=2))))
def test_cometic_theorem_on_random_monoids(data):
    n, gens = data
    rep = verify_theorem_thmcat(monoid_category(gens, n))
    assert rep.ok, str(rep)


@settings(max_examples=15, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=1, max_size=3))
def test_cometic_theorem_on_full_map_categories(sizes):
    sets = {f"S{k}": [f"s{k}_{i}" for i in range(s)] for k, s in enumerate(sizes)}
    assert verify_theorem_thmcat(fixtures.full_set_category(sets)).ok


def test_missing_identity_is_reported():
    C = SmallConcreteCategory({"X": ["x", "y"]})
    C.add_map("swap", "X", "X", {"x": "y", "y": "x"})
    rep = validate_category(C)
    assert not rep.ok and "identities" in [n for n, _ in rep.failures]


def test_missing_composite_is_reported():
    C = SmallConcreteCategory({"X": ["x", "y"]})
    C.add_map("1", "X", "X", {"x": "x", "y": "y"})
    C.add_map("cx", "X", "X", {"x": "x", "y": "x"})
    C.add_map("swap", "X", "X", {"x": "y", "y": "x"})
    assert not validate_category(C).ok


def test_partial_map_is_rejected():
    C = SmallConcreteCategory({"X": ["x", "y"]})
    with pytest.raises(CategoryError):
        C.add_map("f", "X", "X", {"x": "x"})


def test_non_injective_monomorphism():
    C = fixtures.non_injective_mono_category()
    assert is_monomorphism(C, "f") and not is_injective(C.morphisms["f"])
    Phi = cometic_functor(C)
    assert is_injective(Phi.target.morphisms[("Phi", "f")])


def test_cometic_object_size():
    C = fixtures.full_set_category({"A": ["a1", "a2"], "B": ["b1"]})
    # morphisms into B: 1 from A (2 elements) and 1 from B (1 element)
    assert len(cometic_object(C, "B")) == 3
    assert len(cometic_object(C, "A")) == 4 * 2 + 2 * 1


def test_projection_is_natural_and_corruption_is_detected():
    C = fixtures.example_category_small()
    pi = cometic_projection(C)
    assert not naturality_failures(pi)
    comp = pi.components["C3"]
    k = next(c for c in comp if c[2] == "m")
    comp[k] = "0"
    assert naturality_failures(pi)


def test_cometic_functor_is_totally_faithful_even_when_identity_maps_coincide():
    # two different names for the same underlying map in different hom-sets
    C = fixtures.categorified_poset(fixtures.chain(3, ["x", "y", "z"]))
    faith = check_faithfulness(cometic_functor(C))
    assert faith["totally_faithful"] and faith["injective_on_objects"]


def test_example_category_has_non_injective_monos():
    C = fixtures.example_category_small()
    monos = [f for f, m in C.morphisms.items() if m.src != m.dst and is_monomorphism(C, f)]
    assert monos and all(not is_injective(C.morphisms[f]) for f in monos)


def test_all_fixture_categories_are_valid():
    for name, C in fixtures.cometic_fixtures().items():
        assert validate_category(C).ok, name


def test_monoid_closure_helper():
    C = monoid_category([[1, 0]], 2)
    assert len(C.morphisms) == 2
    assert all(is_monomorphism(C, f) for f in C.morphisms)
    assert list(itertools.islice(C.composable(), 1))
