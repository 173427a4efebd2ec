"""Gadgets of ranks 0, 1, 2 and the one-gadget-at-a-time gluing construction.

A rank-2 upward gadget is a length-5 lattice with boundary
``B = {0, a_p, b_p, a_q, b_q, 1}`` whose only nontrivial congruences are
``cg(a_p, b_p) < cg(a_q, b_q)``.  Gluing it into a lattice ``L`` along ``B``
forces ``cg(a_p, b_p) <= cg(a_q, b_q)`` in the result.  The rank-1 and rank-0
gadgets are its quotients, the downward gadgets are the duals, and a double
gadget is the union of the two sharing only ``B``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .congruence import CongruenceEngine, con_lattice, quotient_lattice
from .order import Label, Lattice, OrderError, bits, order_iso, quasiorder_closure, render
from .report import Report

ROLES = ("0", "a_p", "b_p", "a_q", "b_q", "1")
ORIENTATIONS = ("up", "dn", "double")

# The shipped rank-2 upward blueprint as a cover list.  a_q <= x0 and
# x0 ^ v1 = u collapse the chain u < v0 < v1 with [a_q, b_q]; then [v0, v1]
# projects up onto [c, d] and [c, d] down onto [a_p, b_p].  Nothing
# collapses [a_q, b_q] from [a_p, b_p], so the forcing is one-way.
BLUEPRINT_COVERS: tuple[tuple[str, str], ...] = (
    ("0", "ap"), ("0", "aq"), ("0", "u"), ("0", "m1"), ("0", "m2"),
    ("u", "v0"), ("u", "x0"), ("v0", "v1"), ("v0", "c"),
    ("v1", "x1"), ("v1", "d"),
    ("ap", "c"), ("ap", "bp"), ("bp", "d"), ("c", "d"),
    ("aq", "bq"), ("aq", "x0"), ("bq", "x1"), ("x0", "x1"),
    ("m1", "c"), ("m2", "x0"),
    ("x1", "1"), ("d", "1"),
)
BLUEPRINT_BOUNDARY = {"0": "0", "a_p": "ap", "b_p": "bp", "a_q": "aq", "b_q": "bq", "1": "1"}


class GadgetError(ValueError):
    def __init__(self, msg: str, report: Report | None = None):
        super().__init__(msg)
        self.report = report


def lattice_from_covers(covers, bottom="0", top="1") -> Lattice:
    """Lattice generated by a cover list; ``bottom`` and ``top`` are forced to be bounds."""
    els: list = []
    for x, y in covers:
        for z in (x, y):
            if z not in els:
                els.append(z)
    for z in (bottom, top):
        if z not in els:
            els.append(z)
    pairs = list(covers) + [(bottom, z) for z in els] + [(z, top) for z in els]
    q = quasiorder_closure(els, pairs)
    # list elements bottom-up so quotient blocks are named after their least member
    order = sorted(range(len(els)), key=lambda i: bin(q.down[i]).count("1"))
    return Lattice.from_pairs([els[i] for i in order], q.pairs())


def blueprint_lattice(covers=BLUEPRINT_COVERS) -> Lattice:
    return lattice_from_covers(covers)


@dataclass
class Gadget:
    rank: int
    orientation: str
    p: Label
    q: Label
    lattice: Lattice = field(repr=False)
    boundary: dict = field(default_factory=dict)
    tag: str = "g"
    covers: tuple = field(default=BLUEPRINT_COVERS, repr=False)

    @property
    def B(self) -> set:
        return set(self.boundary.values())

    @property
    def interior(self) -> list:
        b = self.B
        return [x for x in self.lattice.elements if x not in b]

    def anchors(self) -> tuple:
        bd = self.boundary
        return bd["a_p"], bd["b_p"], bd["a_q"], bd["b_q"]


def default_anchors(p, q, rank: int) -> dict:
    """Anchor labels ``<a,p>`` etc; a collapsed anchor pair shares the ``a`` label."""
    ap, aq = ("a", p), ("a", q)
    bp = ("b", p) if rank == 2 else ap
    bq = ("b", q) if rank >= 1 else aq
    return {"0": "0", "a_p": ap, "b_p": bp, "a_q": aq, "b_q": bq, "1": "1"}


def _rank_quotient(G: Lattice, rank: int, boundary: dict) -> Lattice:
    if rank == 2:
        return G
    E = CongruenceEngine(G)
    role = "a_p" if rank == 1 else "a_q"
    pair = (boundary[role], boundary["b" + role[1:]])
    theta = E.to_congruence(E.cg(*pair))
    Q, _ = quotient_lattice(G, theta)
    return Q


def build_gadget(rank: int, orientation: str, p, q, anchors: dict | None = None,
                 covers=BLUEPRINT_COVERS, tag: str = "g") -> Gadget:
    """Instantiate a gadget from the blueprint with structured labels.

    Interior elements become ``<tag,orientation,p,q,name>``.  ``anchors`` maps the
    boundary roles to host labels; by default ``<a,p>``, ``<b,p>``, ``<a,q>``, ``<b,q>``.
    """
    if p == q:
        raise GadgetError("gadget colors must differ")
    if rank not in (0, 1, 2):
        raise GadgetError(f"unknown rank {rank}")
    if orientation not in ORIENTATIONS:
        raise GadgetError(f"unknown orientation {orientation!r}")
    anchors = dict(anchors or default_anchors(p, q, rank))
    if orientation == "double":
        up = build_gadget(rank, "up", p, q, anchors, covers, tag)
        dn = build_gadget(rank, "dn", p, q, anchors, covers, tag)
        L = Lattice.from_pairs(list(up.lattice.elements) + dn.interior,
                               up.lattice.pairs() + dn.lattice.pairs())
        return Gadget(rank, "double", p, q, L, anchors, tag, tuple(covers))

    base = _rank_quotient(blueprint_lattice(covers), rank, BLUEPRINT_BOUNDARY)
    names = {x: element_label(orientation, x, anchors, tag, p, q) for x in base.elements}
    if orientation == "up":
        L = base.relabel(names)
    else:
        L = Lattice([names[x] for x in base.elements], base.down)
    return Gadget(rank, orientation, p, q, L, anchors, tag, tuple(covers))


_ROLE_OF = {v: k for k, v in BLUEPRINT_BOUNDARY.items()}
_DN_SWAP = {"0": "1", "1": "0", "a_p": "b_p", "b_p": "a_p", "a_q": "b_q", "b_q": "a_q"}


def element_label(orientation: str, name, anchors: dict, tag, p, q):
    """Host label of blueprint element ``name`` in an up or dn gadget."""
    role = _ROLE_OF.get(name)
    if role is None:
        return (tag, orientation, p, q, name)
    return anchors[_DN_SWAP[role] if orientation == "dn" else role]


def rank_projection(rank_from: int, rank_to: int, covers=BLUEPRINT_COVERS) -> dict:
    """Blueprint names of the rank-``rank_from`` gadget onto those of its rank-``rank_to`` quotient."""
    if rank_to > rank_from:
        raise GadgetError("a gadget only projects onto lower ranks")
    G = blueprint_lattice(covers)
    src = _rank_quotient(G, rank_from, BLUEPRINT_BOUNDARY)
    dst = _rank_quotient(G, rank_to, BLUEPRINT_BOUNDARY)
    E = CongruenceEngine(G)
    bd = BLUEPRINT_BOUNDARY
    mask = {2: 0, 1: E.cg(bd["a_p"], bd["b_p"]), 0: E.cg(bd["a_q"], bd["b_q"])}[rank_to]
    theta = E.to_congruence(mask)
    rep = {}
    for i, x in enumerate(G.elements):
        rep.setdefault(theta.labels[i], x)
    out = {x: rep[theta.labels[G.index[x]]] for x in src.elements}
    assert set(out.values()) <= set(dst.elements)
    return out


def _interval_length(L: Lattice, lo, hi) -> int:
    return 0 if lo == hi else L.interval_length(lo, hi)


def width_condition(L: Lattice, B) -> tuple[bool, Label | None]:
    """Every principal filter meets ``B`` in a set with a least element, and dually."""
    bmask = sum(1 << L.index[b] for b in B)
    for i in range(len(L)):
        ups = L.up[i] & bmask
        if not any(L.up[b] & bmask == ups for b in bits(ups)):
            return False, L.elements[i]
        dns = L.down[i] & bmask
        if not any(L.down[b] & bmask == dns for b in bits(dns)):
            return False, L.elements[i]
    return True, None


def verify_gadget(g: Gadget) -> Report:
    """Check the gadget contract with the order and congruence oracles."""
    rep = Report(f"gadget rank {g.rank} {g.orientation} ({render(g.p)},{render(g.q)})")
    L, bd = g.lattice, g.boundary
    if not rep.check("boundary in carrier", all(x in L for x in bd.values())):
        return rep
    ap, bp, aq, bq = g.anchors()
    zero, one = bd["0"], bd["1"]
    rep.check("bounds", L.bottom_label == zero and L.top_label == one)
    chain_ok = all(L.le(x, y) for x, y in ((zero, ap), (ap, bp), (bp, one), (zero, aq), (aq, bq), (bq, one)))
    chain_ok = chain_ok and zero not in (ap, aq) and one not in (bp, bq)
    if not rep.check("boundary order 0 < a <= b < 1", chain_ok):
        return rep
    lp, lq = _interval_length(L, ap, bp), _interval_length(L, aq, bq)
    rep.check("anchor lengths sum to rank", lp + lq == g.rank and lp <= lq <= 1, f"{lp}+{lq}")
    rep.check("a_p v a_q = 1", L.join(ap, aq) == one)
    rep.check("b_p ^ b_q = 0", L.meet(bp, bq) == zero)
    ok, w = width_condition(L, g.B)
    rep.check("width condition", ok, render(w) if w is not None else "")
    length = L.length()
    rep.check("length", length == 5 if g.rank == 2 else length <= 5, str(length))

    if g.orientation == "double":
        iso = order_iso(L, L.dual_poset())
        rep.check("selfdual", iso is not None)
        return rep

    cons = con_lattice(L)
    E = CongruenceEngine(L)
    alpha, beta, full = E.cg(ap, bp), E.cg(aq, bq), E.full_mask()
    nontrivial = [c for c in cons if not c.is_trivial() and not c.is_full()]
    if g.rank == 2:
        rep.check("exactly four congruences", len(cons) == 4, str(len(cons)))
        rep.check("cg(a_p,b_p) < cg(a_q,b_q) < nabla",
                  0 != alpha and alpha & ~beta == 0 and alpha != beta and beta != full)
    elif g.rank == 1:
        rep.check("exactly one nontrivial congruence", len(nontrivial) == 1, str(len(nontrivial)))
        rep.check("it is cg(a_q,b_q)", bool(nontrivial) and E.from_congruence(nontrivial[0]) == beta)
    else:
        rep.check("simple", len(cons) == 2, str(len(cons)))
    return rep


# ---------------------------------------------------------------------------
# gluing


class GlueError(ValueError):
    def __init__(self, msg: str, report: Report | None = None, witness=None):
        super().__init__(msg)
        self.report = report
        self.witness = witness


def glue_preconditions(L: Lattice, ap, bp, aq, bq, rank: int, gadget: Gadget | None = None) -> Report:
    rep = Report("glue preconditions")
    if not rep.check("anchors in host", all(x in L for x in (ap, bp, aq, bq))):
        return rep
    zero, one = L.bottom_label, L.top_label
    ok = all(L.le(x, y) for x, y in ((ap, bp), (aq, bq)))
    ok = ok and zero not in (ap, aq) and one not in (bp, bq)
    if not rep.check("0 < a <= b < 1", ok):
        return rep
    lp, lq = _interval_length(L, ap, bp), _interval_length(L, aq, bq)
    rep.check("rank = length[a_p,b_p] + length[a_q,b_q]", lp + lq == rank, f"{lp}+{lq} vs {rank}")
    rep.check("length[a_p,b_p] <= length[a_q,b_q] <= 1", lp <= lq <= 1)
    rep.check("a_p v a_q = 1", L.join(ap, aq) == one)
    rep.check("b_p ^ b_q = 0", L.meet(bp, bq) == zero)
    for lo, hi, nm in ((zero, ap, "[0,a_p]"), (bp, one, "[b_p,1]"),
                       (zero, aq, "[0,a_q]"), (bq, one, "[b_q,1]")):
        rep.check(f"length{nm} <= 2", _interval_length(L, lo, hi) <= 2)
    if gadget is not None:
        want = {"0": zero, "a_p": ap, "b_p": bp, "a_q": aq, "b_q": bq, "1": one}
        rep.check("gadget boundary matches anchors",
                  all(gadget.boundary[k] == v for k, v in want.items()))
        shared = set(L.elements) & set(gadget.lattice.elements)
        rep.check("host and gadget share exactly B", shared == gadget.B,
                  ",".join(sorted(render(x) for x in shared ^ gadget.B)))
    return rep


@dataclass
class GlueResult:
    lattice: Lattice
    host: Lattice = field(repr=False)
    gadget: Gadget = field(repr=False)
    hat: dict = field(repr=False)    # x in L -> least element of B above x (in L)
    check: dict = field(repr=False)  # y in G -> greatest element of B below y (in G)
    acs: dict = field(repr=False)    # y in G -> least element of B above y (in G)
    ahat: dict = field(repr=False)   # x in L -> greatest element of B below x (in L)

    def formula_join(self, x, y):
        """Join of ``x`` in the host and ``y`` in the gadget via the boundary operators."""
        L, G = self.host, self.gadget.lattice
        if x in G:
            return G.join(x, y)
        if y in L:
            return L.join(x, y)
        if self.gadget.orientation == "up":
            return G.join(self.hat[x], y)
        return L.join(x, self.acs[y])

    def formula_meet(self, x, y):
        L, G = self.host, self.gadget.lattice
        if x in G:
            return G.meet(x, y)
        if y in L:
            return L.meet(x, y)
        if self.gadget.orientation == "up":
            return L.meet(x, self.check[y])
        return G.meet(self.ahat[x], y)

    def formula_mismatches(self) -> list[tuple]:
        """Cross pairs where the formulas disagree with the closed order's lub/glb."""
        M, G = self.lattice, self.gadget
        bad = []
        for x in self.host.elements:
            for y in G.interior:
                if x in G.lattice:
                    continue
                if self.formula_join(x, y) != M.join(x, y) or self.formula_meet(x, y) != M.meet(x, y):
                    bad.append((x, y))
        return bad


def _extreme(L: Lattice, i: int, bmask: int, above: bool):
    if above:
        s = L.up[i] & bmask
        for b in bits(s):
            if L.up[b] & bmask == s:
                return L.elements[b]
    else:
        s = L.down[i] & bmask
        for b in bits(s):
            if L.down[b] & bmask == s:
                return L.elements[b]
    raise GlueError(f"{render(L.elements[i])} has no {'least' if above else 'greatest'} boundary "
                    f"element {'above' if above else 'below'} it")


def glue(L: Lattice, g: Gadget, verify: bool = True) -> GlueResult:
    """Glue an up or dn gadget into ``L`` along its boundary.

    The glued order is the quasiorder closure of the two orders.  With ``verify``
    the closure is checked to be antisymmetric and a lattice, both constituents
    are checked to be {0,1}-sublattices, the cross-order law is checked, and the
    boundary-operator formulas are compared with the brute-force joins and meets.
    """
    if g.orientation == "double":
        raise GlueError("glue the two halves of a double gadget one at a time")
    ap, bp, aq, bq = g.anchors()
    pre = glue_preconditions(L, ap, bp, aq, bq, g.rank, g)
    if not pre.ok:
        raise GlueError("gluing preconditions fail: " + "; ".join(n for n, _ in pre.failures), pre)
    G = g.lattice
    els = list(L.elements) + g.interior
    q = quasiorder_closure(els, L.pairs() + G.pairs())
    try:
        M = Lattice(q.elements, q.up)
    except OrderError as e:
        raise GlueError("glued order is not a lattice", witness=e.witness) from None
    bL = sum(1 << L.index[b] for b in g.B)
    bG = sum(1 << G.index[b] for b in g.B)
    hat = {x: _extreme(L, L.index[x], bL, True) for x in L.elements}
    ahat = {x: _extreme(L, L.index[x], bL, False) for x in L.elements}
    check = {y: _extreme(G, G.index[y], bG, False) for y in G.elements}
    acs = {y: _extreme(G, G.index[y], bG, True) for y in G.elements}
    res = GlueResult(M, L, g, hat, check, acs, ahat)
    if verify:
        _verify_glue(res)
    return res


def _verify_glue(res: GlueResult) -> None:
    M, L, G = res.lattice, res.host, res.gadget.lattice
    for part, nm in ((L, "host"), (G, "gadget")):
        if not part.is_sublattice(part.elements) or not M.is_sublattice(part.elements):
            raise GlueError(f"{nm} is not a sublattice of the glued lattice")
        for x in part.elements:
            for y in part.elements:
                if part.le(x, y) != M.le(x, y):
                    raise GlueError(f"glued order changes the {nm} order", witness=(x, y))
    if M.bottom_label != L.bottom_label or M.top_label != L.top_label:
        raise GlueError("glued lattice has new bounds")
    Gint = res.gadget.interior
    for x in L.elements:
        if x in G:
            continue
        for y in Gint:
            up = M.le(x, y)
            if up != G.le(res.hat[x], y) or up != L.le(x, res.check[y]):
                raise GlueError("cross-order law fails", witness=(x, y))
            dn = M.le(y, x)
            if dn != L.le(res.acs[y], x) or dn != G.le(y, res.ahat[x]):
                raise GlueError("cross-order law fails", witness=(y, x))
    bad = res.formula_mismatches()
    if bad:
        raise GlueError("join/meet formulas disagree with the glued order", witness=bad[0])


def glue_double(L: Lattice, g: Gadget, verify: bool = True) -> Lattice:
    """Glue the up half, then the dn half, of a double gadget."""
    for orientation in ("up", "dn"):
        half = build_gadget(g.rank, orientation, g.p, g.q, g.boundary, g.covers, g.tag)
        L = glue(L, half, verify).lattice
    return L
