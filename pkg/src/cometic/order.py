"""Finite quasiorders, posets and lattices.

Elements are arbitrary hashable labels (strings or nested tuples such as
``("a", "p")``).  Relations are stored as one Python ``int`` bitset per element,
so ``up[i]`` has bit ``j`` set iff element ``i`` is below element ``j``.
"""
from __future__ import annotations

import os
from typing import Hashable, Iterable, Iterator, Sequence

Label = Hashable


class OrderError(ValueError):
    """Raised for malformed relations or structures that fail a required law."""

    def __init__(self, msg: str, witness=None):
        super().__init__(msg)
        self.witness = witness


def render(x: Label) -> str:
    """Canonical text form of a label; tuples print as ``<a,p>``."""
    if isinstance(x, tuple):
        return "<" + ",".join(render(y) for y in x) + ">"
    return str(x)


def label_key(x: Label):
    return render(x)


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def iso_cap() -> int:
    return int(os.environ.get("COMETIC_ISO_CAP", "64"))


# ---------------------------------------------------------------------------
# quasiorders


class QuasiOrder:
    """A reflexive, transitive relation on a finite labeled carrier."""

    def __init__(self, elements: Sequence[Label], up: Sequence[int]):
        self.elements = tuple(elements)
        self.index = {x: i for i, x in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise OrderError("duplicate labels in carrier")
        self.up = list(up)
        n = len(self.elements)
        self.down = [0] * n
        for i in range(n):
            for j in bits(self.up[i]):
                self.down[j] |= 1 << i

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.index

    def __iter__(self):
        return iter(self.elements)

    def le(self, x: Label, y: Label) -> bool:
        return bool(self.up[self.index[x]] >> self.index[y] & 1)

    def lei(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def pairs(self) -> list[tuple[Label, Label]]:
        els = self.elements
        return [(els[i], els[j]) for i in range(len(els)) for j in bits(self.up[i])]

    def relation(self) -> frozenset:
        return frozenset(self.pairs())

    def is_antisymmetric(self) -> bool:
        return all(self.up[i] & self.down[i] == 1 << i for i in range(len(self)))

    def upset(self, x: Label) -> list[Label]:
        return [self.elements[j] for j in bits(self.up[self.index[x]])]

    def downset(self, x: Label) -> list[Label]:
        return [self.elements[j] for j in bits(self.down[self.index[x]])]

    def least_elements(self) -> list[Label]:
        full = (1 << len(self)) - 1
        return [x for i, x in enumerate(self.elements) if self.up[i] == full]

    def greatest_elements(self) -> list[Label]:
        full = (1 << len(self)) - 1
        return [x for i, x in enumerate(self.elements) if self.down[i] == full]

    def same_relation(self, other: "QuasiOrder") -> bool:
        return set(self.elements) == set(other.elements) and self.relation() == other.relation()

    def __repr__(self) -> str:
        return f"{type(self).__name__}({len(self)} elements)"


def _close(up: list[int]) -> list[int]:
    n = len(up)
    for k in range(n):
        kb = 1 << k
        uk = up[k]
        for i in range(n):
            if up[i] & kb:
                up[i] |= uk
    return up


def quasiorder_closure(carrier: Iterable[Label], seed: Iterable[tuple[Label, Label]]) -> QuasiOrder:
    """Least quasiorder on ``carrier`` containing every pair of ``seed``."""
    elements = list(carrier)
    index = {x: i for i, x in enumerate(elements)}
    up = [1 << i for i in range(len(elements))]
    for x, y in seed:
        if x not in index or y not in index:
            raise OrderError(f"pair ({render(x)}, {render(y)}) leaves the carrier", (x, y))
        up[index[x]] |= 1 << index[y]
    return QuasiOrder(elements, _close(up))


# ---------------------------------------------------------------------------
# posets


class Poset(QuasiOrder):
    def __init__(self, elements: Sequence[Label], up: Sequence[int]):
        super().__init__(elements, up)
        if not self.is_antisymmetric():
            for i in range(len(self)):
                other = self.up[i] & self.down[i] & ~(1 << i)
                if other:
                    j = next(bits(other))
                    raise OrderError("relation is not antisymmetric",
                                     (self.elements[i], self.elements[j]))
        self._covers: list[int] | None = None
        self._height: list[int] | None = None

    @classmethod
    def from_pairs(cls, elements: Iterable[Label], pairs: Iterable[tuple[Label, Label]]):
        q = quasiorder_closure(elements, pairs)
        return cls(q.elements, q.up)

    # covers are the transitive reduction
    @property
    def upper_covers(self) -> list[int]:
        if self._covers is None:
            cov = []
            for i in range(len(self)):
                strict = self.up[i] & ~(1 << i)
                c = strict
                for j in bits(strict):
                    c &= ~(self.up[j] & ~(1 << j))
                cov.append(c)
            self._covers = cov
        return self._covers

    def covers(self) -> list[tuple[Label, Label]]:
        els = self.elements
        return [(els[i], els[j]) for i in range(len(els)) for j in bits(self.upper_covers[i])]

    def covers_idx(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(len(self)) for j in bits(self.upper_covers[i])]

    def heights(self) -> list[int]:
        """Length of the longest chain from a minimal element up to each element."""
        if self._height is None:
            order = sorted(range(len(self)), key=lambda i: popcount(self.down[i]))
            h = [0] * len(self)
            lower = [0] * len(self)
            for i, j in self.covers_idx():
                lower[j] |= 1 << i
            for j in order:
                h[j] = max((h[i] + 1 for i in bits(lower[j])), default=0)
            self._height = h
        return self._height

    def length(self) -> int:
        return max(self.heights(), default=0)

    def interval_length(self, lo: Label, hi: Label) -> int:
        """Length of ``[lo, hi]``; ``lo`` must be below ``hi``."""
        i, j = self.index[lo], self.index[hi]
        if not self.lei(i, j):
            raise OrderError(f"{render(lo)} is not below {render(hi)}", (lo, hi))
        inside = self.up[i] & self.down[j]
        best = {i: 0}
        for k in sorted(bits(inside), key=lambda k: popcount(self.down[k])):
            if k == i:
                continue
            best[k] = max(best[m] + 1 for m in bits(self.down[k] & inside & ~(1 << k))
                          if m in best)
        return best[j]

    def bottom(self):
        least = self.least_elements()
        return least[0] if least else None

    def top(self):
        great = self.greatest_elements()
        return great[0] if great else None

    def is_bounded(self) -> bool:
        return self.bottom() is not None and self.top() is not None and len(self) >= 2

    def restrict(self, subset: Iterable[Label]) -> "Poset":
        sub = [x for x in self.elements if x in set(subset)]
        idx = [self.index[x] for x in sub]
        up = []
        for i in idx:
            up.append(sum(1 << k for k, j in enumerate(idx) if self.up[i] >> j & 1))
        return Poset(sub, up)

    def relabel(self, mapping) -> "Poset":
        return Poset([mapping[x] for x in self.elements], self.up)

    def dual_poset(self) -> "Poset":
        return Poset(self.elements, self.down)


def is_lattice_order(p: Poset) -> tuple[bool, tuple | None]:
    """Check every pair has a join and a meet; return a witness pair otherwise."""
    up_of = {m: i for i, m in enumerate(p.up)}
    down_of = {m: i for i, m in enumerate(p.down)}
    n = len(p)
    if n == 0:
        return False, None
    for i in range(n):
        ui, di = p.up[i], p.down[i]
        for j in range(i + 1, n):
            if (ui & p.up[j]) not in up_of or (di & p.down[j]) not in down_of:
                return False, (p.elements[i], p.elements[j])
    return True, None


class Lattice(Poset):
    """A finite lattice with precomputed join and meet tables (element indices)."""

    def __init__(self, elements: Sequence[Label], up: Sequence[int]):
        super().__init__(elements, up)
        n = len(self)
        if n == 0:
            raise OrderError("empty lattice")
        up_of = {m: i for i, m in enumerate(self.up)}
        down_of = {m: i for i, m in enumerate(self.down)}
        jt = [[0] * n for _ in range(n)]
        mt = [[0] * n for _ in range(n)]
        U, D = self.up, self.down
        for i in range(n):
            ji, mi, ui, di = jt[i], mt[i], U[i], D[i]
            for j in range(i, n):
                try:
                    a = up_of[ui & U[j]]
                    b = down_of[di & D[j]]
                except KeyError:
                    raise OrderError("order is not a lattice",
                                     (self.elements[i], self.elements[j])) from None
                ji[j] = a
                jt[j][i] = a
                mi[j] = b
                mt[j][i] = b
        self.jt = jt
        self.mt = mt
        self.zero = self.index[self.least_elements()[0]]
        self.one = self.index[self.greatest_elements()[0]]

    @classmethod
    def from_poset(cls, p: Poset) -> "Lattice":
        return cls(p.elements, p.up)

    @classmethod
    def from_pairs(cls, elements, pairs) -> "Lattice":
        q = quasiorder_closure(elements, pairs)
        return cls(q.elements, q.up)

    def join(self, x: Label, y: Label) -> Label:
        return self.elements[self.jt[self.index[x]][self.index[y]]]

    def meet(self, x: Label, y: Label) -> Label:
        return self.elements[self.mt[self.index[x]][self.index[y]]]

    @property
    def bottom_label(self):
        return self.elements[self.zero]

    @property
    def top_label(self):
        return self.elements[self.one]

    def join_irreducibles(self) -> list[int]:
        lower = [0] * len(self)
        for i, j in self.covers_idx():
            lower[j] |= 1 << i
        return [j for j in range(len(self)) if popcount(lower[j]) == 1]

    def lower_covers(self) -> list[int]:
        lower = [0] * len(self)
        for i, j in self.covers_idx():
            lower[j] |= 1 << i
        return lower

    def is_sublattice(self, subset: Iterable[Label]) -> bool:
        s = {self.index[x] for x in subset}
        return all(self.jt[i][j] in s and self.mt[i][j] in s for i in s for j in s)

    def sublattice(self, subset: Iterable[Label]) -> "Lattice":
        p = self.restrict(subset)
        return Lattice(p.elements, p.up)

    def relabel(self, mapping) -> "Lattice":
        return Lattice([mapping[x] for x in self.elements], self.up)

    def same_as(self, other: "Lattice") -> bool:
        """Equality of labeled carriers and orders."""
        return isinstance(other, Lattice) and self.same_relation(other)


def lattice_from_poset(p: Poset) -> Lattice:
    ok, witness = is_lattice_order(p)
    if not ok:
        raise OrderError("poset is not a lattice", witness)
    return Lattice(p.elements, p.up)


def dual(L: Lattice, rename=None) -> Lattice:
    """Order-reversed lattice; ``rename`` optionally relabels the elements."""
    els = L.elements if rename is None else [rename(x) for x in L.elements]
    return Lattice(els, L.down)


def is_homomorphism(L1: Lattice, L2: Lattice, f: dict, bounds: bool = True):
    """Return ``None`` if ``f`` is a (0,1-preserving) lattice homomorphism, else a violating pair."""
    g = [L2.index[f[x]] for x in L1.elements]
    if bounds and (g[L1.zero] != L2.zero or g[L1.one] != L2.one):
        return (L1.bottom_label, L1.top_label)
    n = len(L1)
    for i in range(n):
        ji, mi, gi = L1.jt[i], L1.mt[i], g[i]
        j2, m2 = L2.jt[gi], L2.mt[gi]
        for j in range(i + 1, n):
            if g[ji[j]] != j2[g[j]] or g[mi[j]] != m2[g[j]]:
                return (L1.elements[i], L1.elements[j])
    return None


def is_order_iso(p: Poset, q: Poset, f: dict, anti: bool = False) -> bool:
    if len(p) != len(q) or set(f) != set(p.elements) or set(f.values()) != set(q.elements):
        return False
    for x in p.elements:
        for y in p.elements:
            a, b = (f[x], f[y]) if not anti else (f[y], f[x])
            if p.le(x, y) != q.le(a, b):
                return False
    return True


def _invariant(p: Poset, i: int):
    h = p.heights()
    return (popcount(p.up[i]), popcount(p.down[i]), h[i],
            popcount(p.upper_covers[i]),
            sum(1 for j in range(len(p)) if p.upper_covers[j] >> i & 1))


def order_iso(p: Poset, q: Poset, cap: int | None = None) -> dict | None:
    """Backtracking search for an order isomorphism ``p -> q``."""
    cap = iso_cap() if cap is None else cap
    if max(len(p), len(q)) > cap:
        raise OrderError(f"isomorphism search capped at {cap} elements")
    if len(p) != len(q):
        return None
    n = len(p)
    inv_p = [_invariant(p, i) for i in range(n)]
    inv_q = [_invariant(q, i) for i in range(n)]
    if sorted(inv_p) != sorted(inv_q):
        return None
    # most constrained first: rare invariants, then by height
    freq: dict = {}
    for v in inv_p:
        freq[v] = freq.get(v, 0) + 1
    order = sorted(range(n), key=lambda i: (freq[inv_p[i]], p.heights()[i]))
    cand = [[j for j in range(n) if inv_q[j] == inv_p[i]] for i in range(n)]
    image = [-1] * n
    used = [False] * n
    placed: list[int] = []

    def ok(i: int, j: int) -> bool:
        for k in placed:
            l = image[k]
            if p.lei(i, k) != q.lei(j, l) or p.lei(k, i) != q.lei(l, j):
                return False
        return True

    def go(depth: int) -> bool:
        if depth == n:
            return True
        i = order[depth]
        for j in cand[i]:
            if not used[j] and ok(i, j):
                image[i], used[j] = j, True
                placed.append(i)
                if go(depth + 1):
                    return True
                placed.pop()
                image[i], used[j] = -1, False
        return False

    if not go(0):
        return None
    return {p.elements[i]: q.elements[image[i]] for i in range(n)}


def is_selfdual(L: Poset, cap: int | None = None) -> bool:
    return order_iso(L, L.dual_poset(), cap) is not None


def automorphisms(p: Poset, cap: int | None = None) -> list[dict]:
    """All automorphisms by exhaustive backtracking (desk-scale only)."""
    cap = iso_cap() if cap is None else cap
    if len(p) > cap:
        raise OrderError(f"automorphism search capped at {cap} elements")
    n = len(p)
    inv = [_invariant(p, i) for i in range(n)]
    order = sorted(range(n), key=lambda i: p.heights()[i])
    image = [-1] * n
    used = [False] * n
    out = []

    def go(d: int, placed: list[int]):
        if d == n:
            out.append({p.elements[i]: p.elements[image[i]] for i in range(n)})
            return
        i = order[d]
        for j in range(n):
            if used[j] or inv[j] != inv[i]:
                continue
            if all(p.lei(i, k) == p.lei(j, image[k]) and p.lei(k, i) == p.lei(image[k], j)
                   for k in placed):
                image[i], used[j] = j, True
                go(d + 1, placed + [i])
                image[i], used[j] = -1, False

    go(0, [])
    return out
