"""Named desk-scale fixtures shared by the tests, the scripts and the suite runner."""
from __future__ import annotations

import itertools

from .category import (SmallConcreteCategory, automorphism_category, build_example_category,
                       categorified_poset)
from .order import Poset, QuasiOrder, quasiorder_closure


def chain(n: int, names=None) -> Poset:
    names = names or (["0"] + [f"c{i}" for i in range(1, n - 1)] + ["1"] if n >= 2 else ["0"])
    return Poset.from_pairs(names, list(zip(names, names[1:])))


def diamond(mid=("a", "b")) -> Poset:
    els = ["0", *mid, "1"]
    return Poset.from_pairs(els, [("0", m) for m in mid] + [(m, "1") for m in mid])


def bounded_posets_upto4() -> dict[str, Poset]:
    """One representative of every iso class of bounded posets with 2 to 4 elements."""
    return {
        "chain2": chain(2),
        "chain3": chain(3),
        "chain4": chain(4),
        "diamond": diamond(),
    }


def quasiorder(els, rel) -> QuasiOrder:
    return quasiorder_closure(els, rel)


def quasiorders_with_cycles() -> dict[str, QuasiOrder]:
    return {
        "cycle-pq": quasiorder(["0", "p", "q", "1"], [("0", "p"), ("p", "q"), ("q", "p"), ("q", "1")]),
        "cycle-with-side": quasiorder(["0", "p", "q", "r", "1"],
                                      [("0", "p"), ("p", "q"), ("q", "p"), ("0", "r"), ("q", "1"), ("r", "1")]),
        "two-least": quasiorder(["0", "z", "p", "1"], [("0", "z"), ("z", "0"), ("0", "p"), ("p", "1")]),
        "two-greatest": quasiorder(["0", "p", "u", "1"], [("0", "p"), ("p", "u"), ("u", "1"), ("1", "u")]),
    }


# ---------------------------------------------------------------------------
# categories


def discrete_category() -> SmallConcreteCategory:
    C = SmallConcreteCategory({"X": ["x1", "x2"], "E": []})
    C.add_map("1X", "X", "X", {"x1": "x1", "x2": "x2"})
    C.add_map("1E", "E", "E", {})
    return C


def non_injective_mono_category() -> SmallConcreteCategory:
    """Two objects with a single non-injective map between them; it is still a monomorphism."""
    C = SmallConcreteCategory({"X": ["x1", "x2"], "Y": ["y"]})
    C.add_map("1X", "X", "X", {"x1": "x1", "x2": "x2"})
    C.add_map("1Y", "Y", "Y", {"y": "y"})
    C.add_map("f", "X", "Y", {"x1": "y", "x2": "y"})
    return C


def full_set_category(sets: dict) -> SmallConcreteCategory:
    """Every map between the given finite sets."""
    C = SmallConcreteCategory(sets)
    for X, xs in sets.items():
        for Y, ys in sets.items():
            for k, img in enumerate(itertools.product(ys, repeat=len(xs))):
                C.add_map(f"{X}>{Y}#{k}", X, Y, dict(zip(xs, img)))
    return C


def example_category_small() -> SmallConcreteCategory:
    """D1 = {2-chain}, D2 = {3-chain}: both maps 3-chain -> 2-chain are non-injective monos."""
    return build_example_category({"C2": chain(2)}, {"C3": chain(3, ["0", "m", "1"])})


def example_category_diamond() -> SmallConcreteCategory:
    return build_example_category({"C3": chain(3, ["0", "m", "1"])}, {"D": diamond()})


def diamond_automorphisms() -> SmallConcreteCategory:
    return automorphism_category("D", diamond())


def cometic_fixtures() -> dict[str, SmallConcreteCategory]:
    return {
        "discrete": discrete_category(),
        "non-injective-mono": non_injective_mono_category(),
        "full-maps": full_set_category({"A": ["a1", "a2"], "B": ["b1", "b2", "b3"], "E": []}),
        "example-D1-D2": example_category_diamond(),
        "automorphisms": diamond_automorphisms(),
        "categorified-chain": categorified_poset(chain(3, ["x", "y", "z"])),
    }


# ---------------------------------------------------------------------------
# poset-valued functors


def categorified_chain_functor():
    """x < y < z sent to a 2-chain and two 3-chains on different carriers by injective maps."""
    from .lift import PosetFunctor

    P = chain(3, ["x", "y", "z"])
    A = categorified_poset(P)
    posets = {"x": chain(2), "y": chain(3, ["0", "m", "1"]), "z": chain(3, ["0", "n", "1"])}
    inc = {"0": "0", "1": "1"}
    maps = {
        ("le", "x", "x"): dict(inc),
        ("le", "y", "y"): {"0": "0", "m": "m", "1": "1"},
        ("le", "z", "z"): {"0": "0", "n": "n", "1": "1"},
        ("le", "x", "y"): dict(inc),
        ("le", "x", "z"): dict(inc),
        ("le", "y", "z"): {"0": "0", "m": "n", "1": "1"},
    }
    return PosetFunctor(A, posets, maps)


def automorphism_functor():
    from .lift import inclusion_functor

    return inclusion_functor(diamond_automorphisms(), {"D": diamond()})


def example_functor():
    from .lift import inclusion_functor

    return inclusion_functor(example_category_small(),
                             {"C2": chain(2), "C3": chain(3, ["0", "m", "1"])})


def lift_fixtures() -> dict:
    return {
        "categorified-chain": categorified_chain_functor(),
        "automorphisms": automorphism_functor(),
        "example-non-injective-mono": example_functor(),
    }
