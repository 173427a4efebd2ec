"""The frame lattice, the big lattices N(H,Z,U;I,J) and L(H,nu).

Labels: the frame's simple part uses ``<m,name>``; anchors are ``<a,p>`` and
``<b,p>`` (a single ``<a,z>`` for ``z`` in ``Z``); gadget interiors are
``<g,up|dn,p,q,name>`` and the thick-making gadgets are ``<u,up|dn,1',r,name>``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .congruence import CongruenceEngine, princ_poset
from .gadgets import build_gadget, glue, lattice_from_covers
from .order import (Label, Lattice, QuasiOrder, is_order_iso, label_key,
                    quasiorder_closure, render)
from .quasicolor import (QuasiColoredLattice, derive_canonical_coloring, theta_quotient,
                         validate_quasicoloring)
from .report import Report

ONE_PRIME = "1'"

# Four copies of M3 glued in a staircase along edges; simple, selfdual, length 5.
_M3_STEPS = (
    ("0", "x1", "x2", "x3", "i1"),
    ("x3", "i1", "y2", "y3", "i2"),
    ("y3", "i2", "z2", "z3", "i3"),
    ("z3", "i3", "w2", "w3", "1"),
)
MNH_A1, MNH_B1 = "y3", "i2"
MNH_MARKED = ("x1", "w2")  # one free atom and one free coatom
# order-reversing involution; swaps the designated pair and the marked elements
MNH_ANTI = {"0": "1", "x1": "w2", "x2": "w3", "x3": "i3", "y2": "z2", "y3": "i2",
            "z2": "y2", "z3": "i1", "i1": "z3", "w2": "x1", "w3": "x2", "i2": "y3",
            "i3": "x3", "1": "0"}


class UniverseError(ValueError):
    pass


def mnh_label(x: str) -> Label:
    return x if x in ("0", "1") else ("m", x)


def mnh_covers() -> list[tuple[str, str]]:
    cov: list = []
    for bot, *atoms, top in _M3_STEPS:
        for a in atoms:
            for c in ((bot, a), (a, top)):
                if c not in cov:
                    cov.append(c)
    return cov


def build_mnh() -> Lattice:
    L = lattice_from_covers(mnh_covers())
    return L.relabel({x: mnh_label(x) for x in L.elements})


@dataclass
class ColorUniverse:
    H: list
    Z: set
    U: set
    I: set = field(default_factory=set)
    J: set = field(default_factory=set)
    zero: Label = "0"
    one: Label = "1"

    def validate(self) -> None:
        Hs = set(self.H)
        if len(Hs) != len(self.H):
            raise UniverseError("duplicate colors")
        if self.zero not in self.Z or self.one not in self.U:
            raise UniverseError("need 0 in Z and 1 in U")
        if not (self.Z <= Hs and self.U <= Hs) or self.Z & self.U:
            raise UniverseError("Z and U must be disjoint subsets of H")
        if ONE_PRIME in Hs:
            raise UniverseError(f"color {ONE_PRIME} is reserved for the frame")
        for p, q in set(self.I) | set(self.J):
            if p not in Hs or q not in Hs:
                raise UniverseError(f"pair ({render(p)},{render(q)}) leaves H")
            if p == q:
                raise UniverseError(f"pair ({render(p)},{render(q)}) is diagonal")
            if q in self.Z and p not in self.Z:
                raise UniverseError(f"pair ({render(p)},{render(q)}) goes from outside Z into Z")

    def nu(self) -> QuasiOrder:
        seed = [(z, h) for z in self.Z for h in self.H] + [(h, u) for h in self.H for u in self.U]
        seed += list(self.I) + list(self.J)
        return quasiorder_closure(sorted(self.H, key=label_key), seed)

    def rank(self, p, q) -> int:
        return {(True, True): 0, (True, False): 1, (False, False): 2}[(p in self.Z, q in self.Z)]

    def anchor(self, p) -> tuple:
        return (("a", p), ("a", p)) if p in self.Z else (("a", p), ("b", p))


@dataclass
class FrameLattice:
    lattice: Lattice
    universe: ColorUniverse
    anchors: dict  # color -> (a, b); includes the frame color 1'
    a1: Label = mnh_label(MNH_A1)
    b1: Label = mnh_label(MNH_B1)
    marked: tuple = tuple(mnh_label(x) for x in MNH_MARKED)


def build_n_minus(universe: ColorUniverse) -> Lattice:
    """Mnh plus one private anchor chain per color; nothing is forced yet."""
    universe.validate()
    mnh = build_mnh()
    pairs = mnh.pairs()
    els = list(mnh.elements)
    for p in sorted(universe.H, key=label_key):
        a, b = universe.anchor(p)
        chain = ["0", a] + ([b] if b != a else []) + ["1"]
        els += chain[1:-1]
        pairs += list(zip(chain, chain[1:]))
    return Lattice.from_pairs(els, pairs)


def _glue_double(L: Lattice, rank, p, q, anchors: dict, tag: str, verify: bool) -> Lattice:
    for orientation in ("up", "dn"):
        g = build_gadget(rank, orientation, p, q, anchors, tag=tag)
        L = glue(L, g, verify).lattice
    return L


def _boundary(anchors: dict, p, q) -> dict:
    (ap, bp), (aq, bq) = anchors[p], anchors[q]
    return {"0": "0", "a_p": ap, "b_p": bp, "a_q": aq, "b_q": bq, "1": "1"}


def build_frame(universe: ColorUniverse, verify: bool = True) -> FrameLattice:
    """N(H,Z,U; empty, empty): every anchor pair of U is made to generate nabla."""
    L = build_n_minus(universe)
    anchors = {p: universe.anchor(p) for p in universe.H}
    anchors[ONE_PRIME] = (mnh_label(MNH_A1), mnh_label(MNH_B1))
    for r in sorted(universe.U, key=label_key):
        L = _glue_double(L, 2, ONE_PRIME, r, _boundary(anchors, ONE_PRIME, r), "u", verify)
    return FrameLattice(L, universe, anchors)


@dataclass
class BigLattice:
    lattice: Lattice
    universe: ColorUniverse
    nu: QuasiOrder
    anchors: dict
    engine: CongruenceEngine = field(repr=False)
    colored: QuasiColoredLattice | None = field(default=None, repr=False)

    def cg_anchor(self, p) -> int:
        a, b = self.anchors[p]
        return self.engine.cg(a, b)


def gluing_steps(universe: ColorUniverse) -> list[tuple]:
    """(pair, orientation) in lexicographic order of rendered labels."""
    steps = [((p, q), "up") for p, q in universe.I] + [((p, q), "dn") for p, q in universe.J]
    return sorted(steps, key=lambda s: (render(s[0][0]), render(s[0][1]), s[1]))


def build_big(universe: ColorUniverse, verify: bool = True, color: bool = True,
              order: list | None = None) -> BigLattice:
    """Glue an up gadget per pair of I and a dn gadget per pair of J into the frame.

    ``order`` overrides the gluing sequence (used to check order independence).
    """
    frame = build_frame(universe, verify)
    L = frame.lattice
    for (p, q), orientation in order or gluing_steps(universe):
        rank = universe.rank(p, q)
        g = build_gadget(rank, orientation, p, q, _boundary(frame.anchors, p, q))
        try:
            L = glue(L, g, verify).lattice
        except Exception as e:
            raise UniverseError(f"gluing {orientation} gadget for ({render(p)},{render(q)}) failed: {e}") from e
    anchors = {p: frame.anchors[p] for p in universe.H}
    nu = universe.nu()
    big = BigLattice(L, universe, nu, anchors, CongruenceEngine(L))
    if color:
        big.colored = derive_canonical_coloring(L, anchors, nu, big.engine)
    return big


def hz_sets(H: QuasiOrder) -> tuple[set, set]:
    return set(H.least_elements()), set(H.greatest_elements())


def build_LHnu(H: QuasiOrder, zero: Label = "0", one: Label = "1", verify: bool = True,
               color: bool = True) -> BigLattice:
    """L(H, nu) = N(H, Z(H), U(H); nu, nu) for a quasiordered set with 0 least and 1 greatest."""
    Z, U = hz_sets(H)
    if zero == one or zero not in Z or one not in U:
        raise UniverseError("need distinct 0 in Z(H) and 1 in U(H)")
    pairs = {(x, y) for x, y in H.pairs() if x != y}
    uni = ColorUniverse(list(H.elements), Z, U, set(pairs), set(pairs), zero, one)
    big = build_big(uni, verify, color)
    if big.nu.relation() != H.relation():
        raise UniverseError("closure of the gadget pairs differs from nu")
    return big


def anti_automorphism(big: BigLattice) -> dict:
    """The label-level order-reversing bijection of N when I = J."""
    f = {}
    for x in big.lattice.elements:
        if x in ("0", "1"):
            f[x] = "1" if x == "0" else "0"
        elif x[0] == "m":
            f[x] = mnh_label(MNH_ANTI[x[1]])
        elif x[0] == "a":
            f[x] = ("b", x[1]) if ("b", x[1]) in big.lattice else x
        elif x[0] == "b":
            f[x] = ("a", x[1])
        else:
            tag, o, p, q, nm = x
            f[x] = (tag, "dn" if o == "up" else "up", p, q, nm)
    return f


def is_selfdual_big(big: BigLattice) -> bool:
    f = anti_automorphism(big)
    L = big.lattice
    if set(f.values()) != set(L.elements):
        return False
    return is_order_iso(L, L.dual_poset(), f)


def zeta_iso(big: BigLattice) -> dict:
    """``p/Theta -> cg(a_p, b_p)``, checked bijective and bi-monotone; keyed by block representative."""
    T = theta_quotient(big.nu)
    P = princ_poset(big.lattice, big.engine)
    z: dict = {}
    for p in big.universe.H:
        m = big.cg_anchor(p)
        if z.setdefault(T.proj[p], m) != m:
            raise UniverseError(f"Theta-equivalent colors {render(p)} get different congruences")
    if len(set(z.values())) != len(z) or set(z.values()) != set(P.masks):
        raise UniverseError("anchor congruences are not exactly Princ")
    for x, mx in z.items():
        for y, my in z.items():
            if T.quotient.le(x, y) != (mx & ~my == 0):
                raise UniverseError(f"not an order isomorphism at ({render(x)},{render(y)})")
    return z


def check_big(big: BigLattice, selfdual: bool | None = None) -> Report:
    """Length, anchor coverage of Princ, the quasi-coloring and the isomorphism to H/Theta."""
    rep = Report(f"N over {len(big.universe.H)} colors ({len(big.lattice)} elements)")
    L = big.lattice
    rep.check("length 5", L.length() == 5, str(L.length()))
    anchor_masks = {big.cg_anchor(p) for p in big.universe.H}
    stray = [m for m in big.engine.princ_masks() if m not in anchor_masks]
    rep.check("every principal congruence is an anchor congruence", not stray, str(len(stray)))
    if big.colored is not None:
        rep.merge(validate_quasicoloring(big.colored, big.engine))
    try:
        zeta_iso(big)
        rep.check("p/Theta -> cg(a_p,b_p) is an order isomorphism", True)
    except UniverseError as e:
        rep.check("p/Theta -> cg(a_p,b_p) is an order isomorphism", False, str(e))
    if selfdual is None:
        selfdual = big.universe.I == big.universe.J
    if selfdual:
        rep.check("selfdual", is_selfdual_big(big))
    return rep
