"""Lifting a faithful poset-valued functor to a lattice-valued one through Princ.

Pipeline for a small category ``A`` whose morphisms are all monomorphisms and a
functor ``F: A -> bounded posets``:

1. tag every carrier with its order, ``x -> (x, tag)``, so equal carriers with
   different orders stay apart;
2. take the image category ``C`` of the tagged maps and its cometic image ``D``;
   every map of ``D`` is injective;
3. ``G(X)`` is the set of eligible triplets of ``C`` ending in ``X'``, quasiordered by
   ``c1 <= c2`` iff their third components compare in ``F(X)``;
4. ``L(X) = L(G(X), nu_X)`` and ``L(f)`` is the homomorphism lifted from ``G(f)``;
5. ``tau_X(p) = cg(a_c, b_c)`` for the trivial triplet ``c`` of ``p'``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .category import (FunctorData, SmallConcreteCategory, cometic_functor, trivial_triplet,
                       validate_category, is_monomorphism)
from .congruence import princ_map, princ_poset
from .gadgets import BLUEPRINT_BOUNDARY, _DN_SWAP, rank_projection
from .nlattice import BigLattice, ONE_PRIME, build_LHnu, check_big, is_selfdual_big
from .order import Lattice, Poset, QuasiOrder, is_homomorphism, render
from .report import Report


class LiftError(ValueError):
    def __init__(self, msg: str, witness=None):
        super().__init__(msg)
        self.witness = witness


@dataclass
class PosetFunctor:
    """``F: A -> bounded posets`` given by a poset per object and a map per morphism."""
    category: SmallConcreteCategory
    posets: dict
    maps: dict


def inclusion_functor(C: SmallConcreteCategory, posets: dict) -> PosetFunctor:
    return PosetFunctor(C, dict(posets), {f: m.as_dict() for f, m in C.morphisms.items()})


def validate_poset_functor(F: PosetFunctor) -> Report:
    A = F.category
    rep = Report("poset functor")
    for X in A.objects:
        P = F.posets.get(X)
        rep.check(f"F({render(X)}) bounded", P is not None and P.is_bounded())
    if not rep.ok:
        return rep
    for f, m in A.morphisms.items():
        P, Q, g = F.posets[m.src], F.posets[m.dst], F.maps.get(f)
        ok = g is not None and set(g) == set(P.elements) and set(g.values()) <= set(Q.elements)
        ok = ok and g[P.bottom()] == Q.bottom() and g[P.top()] == Q.top()
        ok = ok and all(Q.le(g[x], g[y]) for x, y in P.pairs())
        rep.check(f"F({render(f)}) monotone {{0,1}}-map", ok)
    if not rep.ok:
        return rep
    rep.check("identities", all(F.maps[A.identity(X)] == {x: x for x in F.posets[X].elements}
                                for X in A.objects))
    comp = True
    for g, f in A.composable():
        gf, mf, mg = A.compose(g, f), F.maps[f], F.maps[g]
        comp = comp and F.maps[gf] == {x: mg[mf[x]] for x in mf}
    rep.check("composition", comp)
    return rep


def poset_faithfulness(F: PosetFunctor) -> dict:
    A = F.category

    def key(f):
        m = A.morphisms[f]
        return (order_tag(F.posets[m.src]), order_tag(F.posets[m.dst]),
                tuple(sorted((render(x), render(y)) for x, y in F.maps[f].items())))

    faithful = all(len({key(f) for f in A.homset(X, Y)}) == len(A.homset(X, Y))
                   for X in A.objects for Y in A.objects)
    total = len({key(f) for f in A.morphisms}) == len(A.morphisms)
    return {"faithful": faithful, "totally_faithful": total}


# ---------------------------------------------------------------------------
# forgetful indexing


def order_tag(P: Poset) -> str:
    """A label determined by the order: its sorted cover list."""
    return "{" + ",".join(sorted(f"{render(x)}<{render(y)}" for x, y in P.covers())) + "}"


def tagged(P: Poset) -> list:
    t = order_tag(P)
    return [(x, t) for x in P.elements]


def tagged_poset(P: Poset) -> Poset:
    t = order_tag(P)
    return P.relabel({x: (x, t) for x in P.elements})


def forgetful_indexed(P: Poset, Q: Poset, g: dict) -> dict:
    """``g'``: ``(x, tag P) -> (g(x), tag Q)``."""
    tp, tq = order_tag(P), order_tag(Q)
    return {(x, tp): (g[x], tq) for x in P.elements}


@dataclass
class ImageData:
    C: SmallConcreteCategory          # tagged image of F
    obj: dict                         # A-object -> C-object (its tag)
    mor: dict                         # A-morphism -> C-morphism name
    order: dict                       # C-object -> tagged poset
    Phi: FunctorData = field(repr=False)


def image_category(F: PosetFunctor) -> ImageData:
    A = F.category
    obj = {X: order_tag(F.posets[X]) for X in A.objects}
    C = SmallConcreteCategory({obj[X]: tagged(F.posets[X]) for X in A.objects})
    order = {obj[X]: tagged_poset(F.posets[X]) for X in A.objects}
    mor = {}
    for f in sorted(A.morphisms, key=render):
        m = A.morphisms[f]
        P, Q = F.posets[m.src], F.posets[m.dst]
        g = forgetful_indexed(P, Q, F.maps[f])
        key = (obj[m.src], obj[m.dst], C.freeze(obj[m.src], g))
        if key in C._by_map:
            mor[f] = C._by_map[key][0]
        else:
            mor[f] = C.add_map(f, obj[m.src], obj[m.dst], g).name
    rep = validate_category(C)
    if not rep.ok:
        raise LiftError("image of the functor is not a category: " + str(rep.failures))
    return ImageData(C, obj, mor, order, cometic_functor(C))


@dataclass
class TripletQuasiOrder:
    H: QuasiOrder
    zero: tuple
    one: tuple
    Z: set
    U: set


def triplet_quasiorder(img: ImageData, Xc) -> TripletQuasiOrder:
    """``nu_X`` on the eligible triplets ending in ``Xc``: compare third components."""
    P = img.order[Xc]
    H = img.Phi.target.objects[Xc]
    idx = {c: i for i, c in enumerate(H)}
    up = []
    for c in H:
        up.append(sum(1 << idx[d] for d in H if P.le(c[2], d[2])))
    q = QuasiOrder(H, up)
    zero = trivial_triplet(img.C, Xc, P.bottom())
    one = trivial_triplet(img.C, Xc, P.top())
    Z = {c for c in H if c[2] == P.bottom()}
    U = {c for c in H if c[2] == P.top()}
    if zero == one or set(q.least_elements()) != Z or set(q.greatest_elements()) != U:
        raise LiftError("triplet quasiorder has the wrong extremal elements")
    return TripletQuasiOrder(q, zero, one, Z, U)


# ---------------------------------------------------------------------------
# lifting a single map


def _check_color_map(b1: BigLattice, b2: BigLattice, f: dict) -> None:
    H1, H2 = b1.nu, b2.nu
    if set(f) != set(H1.elements) or not set(f.values()) <= set(H2.elements):
        raise LiftError("color map is not a map between the color sets")
    if len(set(f.values())) != len(f):
        raise LiftError("color map is not injective")
    for x, y in H1.pairs():
        if not H2.le(f[x], f[y]):
            raise LiftError("color map is not monotone", (x, y))
    u1, u2 = b1.universe, b2.universe
    if any(f[z] not in u2.Z for z in u1.Z) or any(f[u] not in u2.U for u in u1.U):
        raise LiftError("color map does not preserve least and greatest colors")


def hom_lift(b1: BigLattice, b2: BigLattice, f: dict, verify: bool = True) -> dict:
    """The {0,1}-homomorphism ``L(H1) -> L(H2)`` sending ``a_p, b_p`` to ``a_f(p), b_f(p)``.

    Built piecewise: identity on the simple frame part, anchors by ``f``, each
    gadget onto the gadget of the image pair (projecting onto a lower rank when
    ``f`` moves colors into the least ones).  The result is rescanned over all pairs.
    """
    _check_color_map(b1, b2, f)
    u1, u2 = b1.universe, b2.universe
    a2 = b2.anchors
    projections: dict = {}
    g = {}
    for x in b1.lattice.elements:
        if x in ("0", "1") or x[0] == "m":
            g[x] = x
        elif x[0] == "a":
            g[x] = a2[f[x[1]]][0]
        elif x[0] == "b":
            g[x] = a2[f[x[1]]][1]
        else:
            tag, o, p, q, nm = x
            if tag == "u":
                g[x] = (tag, o, ONE_PRIME, f[q], nm)
                continue
            fp, fq = f[p], f[q]
            j, j2 = u1.rank(p, q), u2.rank(fp, fq)
            proj = projections.get((j, j2))
            if proj is None:
                proj = projections[(j, j2)] = rank_projection(j, j2)
            y = proj[nm]
            role = {v: k for k, v in BLUEPRINT_BOUNDARY.items()}.get(y)
            if role is None:
                g[x] = (tag, o, fp, fq, y)
            else:
                if o == "dn":
                    role = _DN_SWAP[role]
                bd = {"0": "0", "1": "1", "a_p": a2[fp][0], "b_p": a2[fp][1],
                      "a_q": a2[fq][0], "b_q": a2[fq][1]}
                g[x] = bd[role]
    if verify:
        missing = [y for y in g.values() if y not in b2.lattice]
        if missing:
            raise LiftError("assembled map leaves the target lattice", missing[0])
        bad = is_homomorphism(b1.lattice, b2.lattice, g)
        if bad is not None:
            raise LiftError("assembled map is not a {0,1}-homomorphism", bad)
        for p in u1.H:
            if (g[b1.anchors[p][0]], g[b1.anchors[p][1]]) != b2.anchors[f[p]]:
                raise LiftError("anchor pairs are not carried to anchor pairs", p)
    return g


def constrained_homomorphisms(L1: Lattice, L2: Lattice, fixed: dict, limit: int = 2) -> list[dict]:
    """{0,1}-homomorphisms extending ``fixed``; stops after ``limit`` solutions.

    Backtracking with propagation: once two images are known, the images of their
    join and meet are forced.
    """
    n = len(L1)
    start = [-1] * n
    start[L1.zero], start[L1.one] = L2.zero, L2.one
    for x, y in fixed.items():
        start[L1.index[x]] = L2.index[y]
    out: list[dict] = []

    def propagate(img):
        changed = True
        while changed:
            changed = False
            known = [i for i in range(n) if img[i] >= 0]
            for a in range(len(known)):
                i = known[a]
                gi = img[i]
                for b in range(a + 1, len(known)):
                    j = known[b]
                    gj = img[j]
                    for k, want in ((L1.jt[i][j], L2.jt[gi][gj]), (L1.mt[i][j], L2.mt[gi][gj])):
                        if img[k] < 0:
                            img[k] = want
                            changed = True
                        elif img[k] != want:
                            return False
        return True

    def go(img):
        if len(out) >= limit:
            return
        img = list(img)
        if not propagate(img):
            return
        free = [i for i in range(n) if img[i] < 0]
        if not free:
            out.append({L1.elements[i]: L2.elements[img[i]] for i in range(n)})
            return
        i = free[0]
        for c in range(len(L2)):
            if all((not L1.lei(k, i) or L2.lei(img[k], c)) and (not L1.lei(i, k) or L2.lei(c, img[k]))
                   for k in range(n) if img[k] >= 0):
                img[i] = c
                go(img)
                img[i] = -1

    go(start)
    return out


def hom_lift_is_unique(b1: BigLattice, b2: BigLattice, f: dict, marked=()) -> bool:
    """Search for every homomorphism fixing anchors per ``f`` and the marked frame elements."""
    fixed = {m: m for m in marked}
    for p in b1.universe.H:
        a, b = b1.anchors[p]
        fixed[a], fixed[b] = b2.anchors[f[p]]
    sols = constrained_homomorphisms(b1.lattice, b2.lattice, fixed, limit=2)
    return len(sols) == 1 and sols[0] == hom_lift(b1, b2, f)


# ---------------------------------------------------------------------------
# the lifted functor


@dataclass
class LiftedFunctor:
    F: PosetFunctor
    image: ImageData = field(repr=False)
    colors: dict = field(repr=False)      # A-object -> TripletQuasiOrder
    lattices: dict = field(repr=False)    # A-object -> BigLattice
    maps: dict = field(repr=False)        # A-morphism -> homomorphism dict
    color_maps: dict = field(repr=False)  # A-morphism -> G(f)

    def lattice(self, X) -> Lattice:
        return self.lattices[X].lattice


def composite_map(img: ImageData, f) -> dict:
    """G(f) = Phi(F_fo(F(f))) on triplets."""
    D = img.Phi.target
    return D.morphisms[img.Phi.morphisms[img.mor[f]]].as_dict()


def lift_functor(F: PosetFunctor, verify: bool = True) -> LiftedFunctor:
    A = F.category
    rep = validate_category(A)
    if not rep.ok:
        raise LiftError("source is not a category: " + str(rep.failures))
    nonmono = [f for f in A.morphisms if not is_monomorphism(A, f)]
    if nonmono:
        raise LiftError("every morphism must be a monomorphism", nonmono[0])
    rep = validate_poset_functor(F)
    if not rep.ok:
        raise LiftError("not a functor into bounded posets: " + str(rep.failures))
    if not poset_faithfulness(F)["faithful"]:
        raise LiftError("functor is not faithful")
    img = image_category(F)
    colors, lattices, maps, cmaps = {}, {}, {}, {}
    for X in sorted(A.objects, key=render):
        T = triplet_quasiorder(img, img.obj[X])
        colors[X] = T
        lattices[X] = build_LHnu(T.H, T.zero, T.one, verify=verify, color=False)
    for f in sorted(A.morphisms, key=render):
        m = A.morphisms[f]
        cmaps[f] = composite_map(img, f)
        maps[f] = hom_lift(lattices[m.src], lattices[m.dst], cmaps[f], verify=verify)
    return LiftedFunctor(F, img, colors, lattices, maps, cmaps)


def tau_component(LF: LiftedFunctor, X) -> dict:
    """``p -> cg(a_c, b_c)`` (as an engine mask) with ``c`` the trivial triplet of ``p'``;
    checked to be an order isomorphism onto Princ(L(X))."""
    P = LF.F.posets[X]
    big = LF.lattices[X]
    Xc = LF.image.obj[X]
    t = {}
    for p in P.elements:
        c = trivial_triplet(LF.image.C, Xc, (p, Xc))
        t[p] = big.cg_anchor(c)
    masks = set(princ_poset(big.lattice, big.engine).masks)
    if len(set(t.values())) != len(t) or set(t.values()) != masks:
        raise LiftError(f"tau_{render(X)} is not a bijection onto Princ")
    for p in P.elements:
        for q in P.elements:
            if P.le(p, q) != (t[p] & ~t[q] == 0):
                raise LiftError(f"tau_{render(X)} is not an order isomorphism", (p, q))
    return t


def verify_lifting(LF: LiftedFunctor, full_checks: bool = True) -> Report:
    A, F = LF.F.category, LF.F
    rep = Report("lifted functor")
    taus = {}
    for X in A.objects:
        big = LF.lattices[X]
        rep.check(f"L({render(X)}) length 5", big.lattice.length() == 5)
        rep.check(f"L({render(X)}) selfdual", is_selfdual_big(big))
        if full_checks:
            rep.merge(check_big(big), f"L({render(X)}): ")
        try:
            taus[X] = tau_component(LF, X)
            rep.check(f"tau_{render(X)} order isomorphism", True)
        except LiftError as e:
            rep.check(f"tau_{render(X)} order isomorphism", False, str(e))
    for X in A.objects:
        ident = LF.maps[A.identity(X)]
        rep.check(f"L(1_{render(X)}) identity", all(k == v for k, v in ident.items()))
    comp = all(LF.maps[A.compose(g, f)] == {x: LF.maps[g][y] for x, y in LF.maps[f].items()}
               for g, f in A.composable())
    rep.check("L preserves composition", comp)
    for f, m in A.morphisms.items():
        g = LF.maps[f]
        L1, L2 = LF.lattice(m.src), LF.lattice(m.dst)
        b1, b2 = LF.lattices[m.src], LF.lattices[m.dst]
        G = LF.color_maps[f]
        rep.check(f"L({render(f)}) carries anchors by G(f)",
                  all((g[b1.anchors[c][0]], g[b1.anchors[c][1]]) == b2.anchors[G[c]] for c in b1.universe.H))
        if m.src not in taus or m.dst not in taus:
            continue
        P1, P2 = princ_poset(L1, b1.engine), princ_poset(L2, b2.engine)
        try:
            pm = princ_map(L1, L2, g, P1, P2)
        except Exception as e:
            rep.check(f"Princ(L({render(f)})) well defined", False, str(e))
            continue
        ok = True
        for p in F.posets[m.src].elements:
            lhs = taus[m.dst][F.maps[f][p]]
            rhs = P2.masks[pm[P1.index_of_mask(taus[m.src][p])]]
            ok = ok and lhs == rhs
        rep.check(f"square commutes for {render(f)}", ok)
    key = {f: (m.src, m.dst, tuple(sorted((render(x), render(y)) for x, y in LF.maps[f].items())))
           for f, m in A.morphisms.items()}
    faithful = all(len({key[f][2] for f in A.homset(X, Y)}) == len(A.homset(X, Y))
                   for X in A.objects for Y in A.objects)
    rep.check("L faithful", faithful)
    if poset_faithfulness(F)["totally_faithful"]:
        carriers = {X: frozenset(LF.lattice(X).elements) for X in A.objects}
        distinct_obj = len(set(carriers.values())) == len(carriers)
        distinct_mor = len({(carriers[k[0]], carriers[k[1]], k[2]) for k in key.values()}) == len(key)
        rep.check("L totally faithful", distinct_obj and distinct_mor)
    return rep
