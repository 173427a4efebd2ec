"""Hypothesis strategies for small lattices, posets and quasiorders."""
from itertools import combinations

from hypothesis import strategies as st

from cometic.order import Lattice, Poset, quasiorder_closure


def closure_lattice(sets, ground: int) -> Lattice:
    """Intersection closure of ``sets`` plus the full ground set, ordered by inclusion."""
    full = frozenset(range(ground))
    fam = {full} | {frozenset(s) for s in sets}
    changed = True
    while changed:
        changed = False
        for a, b in combinations(list(fam), 2):
            if a & b not in fam:
                fam.add(a & b)
                changed = True
    els = sorted(fam, key=lambda s: (len(s), sorted(s)))
    names = ["s" + "".join(map(str, sorted(s))) for s in els]
    pairs = [(names[i], names[j]) for i, a in enumerate(els) for j, b in enumerate(els) if a < b]
    return Lattice.from_pairs(names, pairs)


@st.composite
def lattices(draw, ground: int = 4, max_sets: int = 6):
    sets = draw(st.lists(st.sets(st.integers(0, ground - 1)), max_size=max_sets))
    return closure_lattice(sets, ground)


@st.composite
def small_lattices(draw):
    """At most 8 elements, small enough for brute-force partition enumeration."""
    L = draw(lattices(ground=3, max_sets=4))
    return L


@st.composite
def relations(draw, max_n: int = 6):
    n = draw(st.integers(1, max_n))
    els = [f"e{i}" for i in range(n)]
    pairs = draw(st.lists(st.tuples(st.sampled_from(els), st.sampled_from(els)), max_size=2 * n))
    return els, pairs


@st.composite
def posets(draw, max_n: int = 6):
    """Random posets: only pairs going up in a fixed linear extension."""
    n = draw(st.integers(1, max_n))
    els = [f"e{i}" for i in range(n)]
    pairs = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=2 * n))
    q = quasiorder_closure(els, [(els[min(a, b)], els[max(a, b)]) for a, b in pairs])
    return Poset(q.elements, q.up)
