"""Quasi-colored lattices.

A quasi-coloring of a lattice ``L`` is a surjective map ``gamma`` from the ordered
pairs ``x <= y`` of ``L`` onto a quasiordered set ``(H, nu)`` such that

* (C1) ``gamma(u1,v1) <=nu gamma(u2,v2)`` implies ``cg(u1,v1) <= cg(u2,v2)``;
* (C2) ``cg(u1,v1) <= cg(u2,v2)`` implies ``gamma(u1,v1) <=nu gamma(u2,v2)``.

Both conditions only depend on the pair ``(gamma, cg)`` of each ordered pair, so
the validator deduplicates those before the quadratic scan.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .congruence import CongruenceEngine, princ_poset
from .order import Label, Lattice, Poset, QuasiOrder, bits, label_key, render
from .report import Report


class QuasiColorError(ValueError):
    def __init__(self, msg: str, witness=None):
        super().__init__(msg)
        self.witness = witness


@dataclass
class QuasiColoredLattice:
    lattice: Lattice
    colors: QuasiOrder
    gamma: dict = field(repr=False)  # (x, y) with x <= y -> color

    def color(self, x, y):
        return self.gamma[(x, y)]


@dataclass
class ThetaQuotient:
    base: QuasiOrder
    blocks: list[list]
    quotient: Poset
    proj: dict  # color -> block representative

    def block_of(self, x) -> list:
        rep = self.proj[x]
        return next(b for b in self.blocks if self.proj[b[0]] == rep)


def theta_quotient(q: QuasiOrder) -> ThetaQuotient:
    """The poset ``H / (nu ^ nu^-1)``; each block is named by its smallest label."""
    groups: dict[int, list] = {}
    for i, x in enumerate(q.elements):
        groups.setdefault(q.up[i] & q.down[i], []).append(x)
    blocks = [sorted(b, key=label_key) for b in groups.values()]
    blocks.sort(key=lambda b: label_key(b[0]))
    proj = {x: b[0] for b in blocks for x in b}
    reps = [b[0] for b in blocks]
    pairs = [(proj[x], proj[y]) for x, y in q.pairs()]
    return ThetaQuotient(q, blocks, Poset.from_pairs(reps, pairs), proj)


def _signatures(Q: QuasiColoredLattice, E: CongruenceEngine) -> dict:
    """Distinct ``(color, cg mask)`` combinations with one witness pair each."""
    sig: dict = {}
    for (x, y), c in Q.gamma.items():
        key = (c, E.cg(x, y))
        if key not in sig:
            sig[key] = (x, y)
    return sig


def validate_quasicoloring(Q: QuasiColoredLattice, engine: CongruenceEngine | None = None,
                           max_listed: int = 20) -> Report:
    L, H = Q.lattice, Q.colors
    E = engine or CongruenceEngine(L)
    rep = Report("quasi-coloring")
    missing = [(L.elements[i], L.elements[j]) for i in range(len(L)) for j in bits(L.up[i])
               if (L.elements[i], L.elements[j]) not in Q.gamma]
    rep.check("gamma total on ordered pairs", not missing,
              ", ".join(f"({render(a)},{render(b)})" for a, b in missing[:max_listed]))
    foreign = [c for c in set(Q.gamma.values()) if c not in H]
    rep.check("gamma lands in H", not foreign, ", ".join(render(c) for c in foreign[:max_listed]))
    unused = [c for c in H.elements if c not in set(Q.gamma.values())]
    rep.check("gamma surjective", not unused, ", ".join(render(c) for c in unused[:max_listed]))
    if foreign:
        return rep
    sig = list(_signatures(Q, E).items())
    c1, c2 = [], []
    for (g1, m1), w1 in sig:
        for (g2, m2), w2 in sig:
            le_nu = H.le(g1, g2)
            le_cg = m1 & ~m2 == 0
            if le_nu and not le_cg:
                c1.append((w1, w2))
            if le_cg and not le_nu:
                c2.append((w1, w2))

    def fmt(vs):
        return "; ".join(f"({render(a)},{render(b)}) vs ({render(c)},{render(d)})"
                         for (a, b), (c, d) in vs[:max_listed])

    rep.check("(C1) color order implies congruence order", not c1, fmt(c1))
    rep.check("(C2) congruence order implies color order", not c2, fmt(c2))
    rep.check("H has a least element", bool(H.least_elements()))
    rep.check("H has a greatest element", bool(H.greatest_elements()))
    return rep


def derive_canonical_coloring(L: Lattice, anchors: dict, colors: QuasiOrder,
                              engine: CongruenceEngine | None = None) -> QuasiColoredLattice:
    """Color each pair by the smallest color whose anchor pair generates the same congruence.

    An anchor pair itself keeps its own color, so that every color is used even
    when several colors are equivalent.
    """
    E = engine or CongruenceEngine(L)
    by_mask: dict[int, Label] = {}
    own: dict = {}
    for p in sorted(colors.elements, key=label_key):
        a, b = anchors[p]
        by_mask.setdefault(E.cg(a, b), p)
        own.setdefault((a, b), p)
    gamma = dict(own)
    for i in range(len(L)):
        for j in bits(L.up[i]):
            m = E.cg_mask(i, j)
            if m not in by_mask:
                raise QuasiColorError("pair generates no anchor congruence",
                                      (L.elements[i], L.elements[j]))
            gamma.setdefault((L.elements[i], L.elements[j]), by_mask[m])
    return QuasiColoredLattice(L, colors, gamma)


def princ_color_iso(Q: QuasiColoredLattice, engine: CongruenceEngine | None = None) -> dict:
    """The isomorphism ``Princ(L) -> H / Theta``, keyed by congruence mask."""
    E = engine or CongruenceEngine(Q.lattice)
    rep = validate_quasicoloring(Q, E)
    if not rep.ok:
        raise QuasiColorError("not a quasi-colored lattice: "
                              + "; ".join(n for n, _ in rep.failures), rep)
    T = theta_quotient(Q.colors)
    f: dict[int, Label] = {}
    for (x, y), c in Q.gamma.items():
        m = E.cg(x, y)
        if f.setdefault(m, T.proj[c]) != T.proj[c]:
            raise QuasiColorError("map to colors is not well defined", (x, y))
    P = princ_poset(Q.lattice, E)
    if set(f) != set(P.masks) or len(set(f.values())) != len(f) or set(f.values()) != set(T.quotient.elements):
        raise QuasiColorError("map is not a bijection onto H/Theta")
    for m1, c1 in f.items():
        for m2, c2 in f.items():
            if (m1 & ~m2 == 0) != T.quotient.le(c1, c2):
                raise QuasiColorError("map is not an order isomorphism", (c1, c2))
    return f
