"""Lattice congruences: generation, Con(L), Princ(L) and the Princ functor on maps."""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property

from .order import Lattice, Poset, bits, render


class CongruenceError(ValueError):
    def __init__(self, msg: str, witness=None):
        super().__init__(msg)
        self.witness = witness


def con_cap() -> int:
    return int(os.environ.get("COMETIC_CON_CAP", "60"))


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if rx < ry:
            self.parent[ry] = rx
        else:
            self.parent[rx] = ry
        return True


def _canonical(uf_or_labels, n: int) -> tuple[int, ...]:
    if isinstance(uf_or_labels, _UnionFind):
        roots = [uf_or_labels.find(i) for i in range(n)]
    else:
        roots = list(uf_or_labels)
    first: dict[int, int] = {}
    out = []
    for i, r in enumerate(roots):
        out.append(first.setdefault(r, i))
    return tuple(out)


@dataclass(frozen=True, eq=False)
class Congruence:
    """A partition of ``host``; ``labels[i]`` is the least index in the block of ``i``."""

    host: Lattice = field(repr=False)
    labels: tuple[int, ...]

    def __eq__(self, other) -> bool:
        return isinstance(other, Congruence) and self.host is other.host and self.labels == other.labels

    def __hash__(self) -> int:
        return hash(self.labels)

    def __le__(self, other: "Congruence") -> bool:
        lab = other.labels
        return all(lab[i] == lab[r] for i, r in enumerate(self.labels))

    def __lt__(self, other: "Congruence") -> bool:
        return self <= other and self.labels != other.labels

    def related(self, x, y) -> bool:
        idx = self.host.index
        return self.labels[idx[x]] == self.labels[idx[y]]

    def relatedi(self, i: int, j: int) -> bool:
        return self.labels[i] == self.labels[j]

    def blocks(self) -> list[list]:
        groups: dict[int, list] = {}
        for i, r in enumerate(self.labels):
            groups.setdefault(r, []).append(self.host.elements[i])
        return list(groups.values())

    def nontrivial_blocks(self) -> list[list]:
        return [b for b in self.blocks() if len(b) > 1]

    def is_trivial(self) -> bool:
        return all(r == i for i, r in enumerate(self.labels))

    def is_full(self) -> bool:
        return all(r == 0 for r in self.labels)

    def serialize(self) -> list[list[str]]:
        return sorted(sorted(render(x) for x in b) for b in self.blocks())

    def join(self, other: "Congruence") -> "Congruence":
        n = len(self.labels)
        uf = _UnionFind(n)
        for i in range(n):
            uf.union(i, self.labels[i])
            uf.union(i, other.labels[i])
        return Congruence(self.host, _canonical(uf, n))

    def meet(self, other: "Congruence") -> "Congruence":
        pairs = list(zip(self.labels, other.labels))
        return Congruence(self.host, _canonical(pairs, len(pairs)))


def delta(L: Lattice) -> Congruence:
    return Congruence(L, tuple(range(len(L))))


def nabla(L: Lattice) -> Congruence:
    return Congruence(L, (0,) * len(L))


def is_congruence(L: Lattice, labels) -> tuple[bool, tuple | None]:
    """Definition-level check: an equivalence compatible with join and meet."""
    n = len(L)
    for x in range(n):
        for y in range(x + 1, n):
            if labels[x] != labels[y]:
                continue
            jx, jy, mx, my = L.jt[x], L.jt[y], L.mt[x], L.mt[y]
            for z in range(n):
                if labels[jx[z]] != labels[jy[z]] or labels[mx[z]] != labels[my[z]]:
                    return False, (L.elements[x], L.elements[y], L.elements[z])
    return True, None


def _saturate(L: Lattice, uf: _UnionFind, work: list[tuple[int, int]]) -> None:
    jt, mt, n = L.jt, L.mt, len(L)
    while work:
        x, y = work.pop()
        jx, jy, mx, my = jt[x], jt[y], mt[x], mt[y]
        for z in range(n):
            a, b = jx[z], jy[z]
            if a != b and uf.union(a, b):
                work.append((a, b))
            a, b = mx[z], my[z]
            if a != b and uf.union(a, b):
                work.append((a, b))


def congruence_generated(L: Lattice, pairs) -> Congruence:
    """Least congruence collapsing every pair in ``pairs`` (labels)."""
    n = len(L)
    uf = _UnionFind(n)
    work = []
    for a, b in pairs:
        if a not in L.index or b not in L.index:
            raise CongruenceError("pair references an element outside the lattice", (a, b))
        i, j = L.index[a], L.index[b]
        if uf.union(i, j):
            work.append((i, j))
    _saturate(L, uf, work)
    return Congruence(L, _canonical(uf, n))


def principal_congruence(L: Lattice, a, b) -> Congruence:
    """cg(a, b) by union-find saturation over freshly merged pairs."""
    return congruence_generated(L, [(a, b)])


def principal_congruence_idx(L: Lattice, i: int, j: int) -> Congruence:
    n = len(L)
    uf = _UnionFind(n)
    work = [(i, j)] if uf.union(i, j) else []
    _saturate(L, uf, work)
    return Congruence(L, _canonical(uf, n))


def con_lattice(L: Lattice, cap: int | None = None) -> list[Congruence]:
    """All congruences: cover-generated principal congruences closed under joins, plus Delta."""
    cap = con_cap() if cap is None else cap
    if len(L) > cap:
        raise CongruenceError(f"Con(L) is capped at {cap} elements (|L| = {len(L)})")
    gens = {principal_congruence_idx(L, i, j) for i, j in L.covers_idx()}
    found = {delta(L)} | gens
    frontier = set(found)
    while frontier:
        new = set()
        for a in frontier:
            for g in gens:
                c = a.join(g)
                if c not in found:
                    new.add(c)
        found |= new
        frontier = new
    return sorted(found, key=lambda c: (len(set(c.labels)) * -1, c.labels))


def is_simple(L: Lattice) -> bool:
    return len(L) > 1 and all(
        principal_congruence_idx(L, i, j).is_full() for i, j in L.covers_idx())


# ---------------------------------------------------------------------------
# join-irreducible dependency engine


class CongruenceEngine:
    """Principal congruences via the dependency relation on join-irreducibles.

    In a finite lattice a congruence is determined by the set of join-irreducibles
    ``p`` it collapses with their unique lower cover, and these sets are exactly the
    subsets closed under ``p D q`` (``p != q`` and some ``x`` has ``p <= q v x`` but
    ``p </= q_* v x``).  ``cg(x, y)`` for ``x <= y`` is the closure of
    ``{p : p <= y, p </= x}``.  Each congruence is therefore encoded as a bitset over
    element indices (only join-irreducible bits are used).
    """

    def __init__(self, L: Lattice):
        self.L = L
        n = len(L)
        lower = L.lower_covers()
        self.J = [j for j in range(n) if lower[j] and not lower[j] & (lower[j] - 1)]
        self.jmask = sum(1 << j for j in self.J)
        self.lower_cover = {j: next(bits(lower[j])) for j in self.J}
        down = L.down
        reach: dict[int, int] = {}
        for q in self.J:
            qs = self.lower_cover[q]
            jq, jqs = L.jt[q], L.jt[qs]
            s = 0
            for x in range(n):
                u, w = jq[x], jqs[x]
                if u != w:
                    s |= down[u] & ~down[w]
            reach[q] = (s & self.jmask) | (1 << q)
        # transitive closure: reach[q] holds every p whose collapse q forces
        for k in self.J:
            kb, rk = 1 << k, reach[k]
            for q in self.J:
                if reach[q] & kb:
                    reach[q] |= rk
        self.reach = reach
        self._cache: dict[tuple[int, int], int] = {}

    def cg_mask(self, i: int, j: int) -> int:
        L = self.L
        lo, hi = L.mt[i][j], L.jt[i][j]
        key = (lo, hi)
        got = self._cache.get(key)
        if got is None:
            t = L.down[hi] & ~L.down[lo] & self.jmask
            got = 0
            for p in bits(t):
                if not got >> p & 1:
                    got |= self.reach[p]
            self._cache[key] = got
        return got

    def cg(self, a, b) -> int:
        return self.cg_mask(self.L.index[a], self.L.index[b])

    def full_mask(self) -> int:
        return self.jmask

    def to_congruence(self, mask: int) -> Congruence:
        keep = self.jmask & ~mask
        sig: dict[int, int] = {}
        labels = []
        for i in range(len(self.L)):
            labels.append(sig.setdefault(self.L.down[i] & keep, i))
        return Congruence(self.L, tuple(labels))

    def from_congruence(self, c: Congruence) -> int:
        return sum(1 << p for p in self.J if c.labels[p] == c.labels[self.lower_cover[p]])

    def cover_masks(self) -> dict[tuple[int, int], int]:
        return {(i, j): self.cg_mask(i, j) for i, j in self.L.covers_idx()}

    def princ_masks(self) -> set[int]:
        """Distinct principal congruences, from all ordered pairs."""
        L = self.L
        out = {0}
        for i in range(len(L)):
            for j in bits(L.up[i] & ~(1 << i)):
                out.add(self.cg_mask(i, j))
        return out


# ---------------------------------------------------------------------------
# Princ


@dataclass
class PrincPoset:
    host: Lattice
    congruences: list[Congruence]
    masks: list[int]
    engine: CongruenceEngine = field(repr=False)

    @cached_property
    def poset(self) -> Poset:
        names = [self.name(k) for k in range(len(self.masks))]
        pairs = [(names[a], names[b]) for a in range(len(self.masks))
                 for b in range(len(self.masks)) if self.masks[a] & ~self.masks[b] == 0]
        return Poset.from_pairs(names, pairs)

    def name(self, k: int) -> str:
        return "cg" + str(k)

    def index_of_mask(self, mask: int) -> int:
        return self.masks.index(mask)

    def le(self, a: int, b: int) -> bool:
        return self.masks[a] & ~self.masks[b] == 0

    def __len__(self) -> int:
        return len(self.masks)


def princ_poset(L: Lattice, engine: CongruenceEngine | None = None) -> PrincPoset:
    """Distinct principal congruences ordered by inclusion, smallest first."""
    eng = engine or CongruenceEngine(L)
    masks = sorted(eng.princ_masks(), key=lambda m: (bin(m).count("1"), m))
    return PrincPoset(L, [eng.to_congruence(m) for m in masks], masks, eng)


def quotient_lattice(L: Lattice, theta: Congruence, name=None) -> tuple[Lattice, dict]:
    """Quotient ``L / theta`` and the projection; blocks are named by ``name(block)``
    (default: the block's first element)."""
    ok, witness = is_congruence(L, theta.labels)
    if not ok:
        raise CongruenceError("partition is not a congruence", witness)
    reps = sorted(set(theta.labels))
    block_of = {r: [L.elements[i] for i, s in enumerate(theta.labels) if s == r] for r in reps}
    nm = {r: (name(block_of[r]) if name else L.elements[r]) for r in reps}
    pos = {r: k for k, r in enumerate(reps)}
    up = []
    for r in reps:
        low = r
        for i, s in enumerate(theta.labels):
            if s == r:
                low = L.mt[low][i]
        m = 0
        for i in bits(L.up[low]):
            m |= 1 << pos[theta.labels[i]]
        up.append(m)
    Q = Lattice([nm[r] for r in reps], up)
    proj = {x: nm[theta.labels[i]] for i, x in enumerate(L.elements)}
    return Q, proj


def princ_map(L1: Lattice, L2: Lattice, f: dict,
              P1: PrincPoset | None = None, P2: PrincPoset | None = None) -> dict[int, int]:
    """The induced map Princ(L1) -> Princ(L2), cg(x, y) |-> cg(f(x), f(y)), as index map.

    ``f`` must be a {0,1}-preserving lattice homomorphism; the map is checked to be
    well defined, 0-preserving and monotone.
    """
    from .order import is_homomorphism

    bad = is_homomorphism(L1, L2, f)
    if bad is not None:
        raise CongruenceError("map is not a {0,1}-lattice homomorphism", bad)
    P1 = P1 or princ_poset(L1)
    P2 = P2 or princ_poset(L2)
    e1, e2 = P1.engine, P2.engine
    out: dict[int, int] = {}
    pos2 = {m: k for k, m in enumerate(P2.masks)}
    pos1 = {m: k for k, m in enumerate(P1.masks)}
    for i in range(len(L1)):
        for j in bits(L1.up[i]):
            a = pos1[e1.cg_mask(i, j)]
            b = pos2[e2.cg(f[L1.elements[i]], f[L1.elements[j]])]
            if out.setdefault(a, b) != b:
                raise CongruenceError("induced Princ map is not well defined",
                                      (L1.elements[i], L1.elements[j]))
    if out[pos1[0]] != pos2[0]:
        raise CongruenceError("induced Princ map does not preserve Delta")
    for a in out:
        for b in out:
            if P1.le(a, b) and not P2.le(out[a], out[b]):
                raise CongruenceError("induced Princ map is not monotone", (a, b))
    return out
