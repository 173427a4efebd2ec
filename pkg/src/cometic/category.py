"""Small concrete categories, functors and the cometic functor.

Objects are named finite sets; morphisms are named maps between them.  The hom-sets
are disjoint: a morphism is its name, and the same underlying map may occur under
different names in different hom-sets.  Composites are resolved by looking up the
composed map in the target hom-set.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .order import Label, Poset, render
from .report import Report


class CategoryError(ValueError):
    def __init__(self, msg: str, witness=None):
        super().__init__(msg)
        self.witness = witness


@dataclass(frozen=True)
class Morphism:
    name: Label
    src: Label
    dst: Label
    mapping: tuple  # (x, f(x)) pairs in carrier order

    def __call__(self, x):
        return self.as_dict()[x]

    def as_dict(self) -> dict:
        return dict(self.mapping)


class SmallConcreteCategory:
    def __init__(self, objects: dict, morphisms: list[Morphism] | None = None):
        self.objects = {k: tuple(v) for k, v in objects.items()}
        self.morphisms: dict[Label, Morphism] = {}
        self._by_map: dict = {}
        self._composite: dict = {}
        for m in morphisms or []:
            self.add(m)

    def add(self, m: Morphism) -> None:
        if m.name in self.morphisms:
            raise CategoryError(f"duplicate morphism name {render(m.name)}")
        self.morphisms[m.name] = m
        self._by_map.setdefault((m.src, m.dst, m.mapping), []).append(m.name)

    def freeze(self, src, mapping: dict) -> tuple:
        """Map as ``(x, f(x))`` pairs in the carrier order of ``src``."""
        try:
            return tuple((x, mapping[x]) for x in self.objects[src])
        except KeyError as e:
            raise CategoryError(f"map is not total on {render(src)}", e.args[0]) from None

    def add_map(self, name, src, dst, mapping: dict) -> Morphism:
        if set(mapping) - set(self.objects.get(src, ())):
            raise CategoryError(f"map {render(name)} has arguments outside {render(src)}")
        m = Morphism(name, src, dst, self.freeze(src, mapping))
        self.add(m)
        return m

    def homset(self, X, Y) -> list[Label]:
        return [n for n, m in self.morphisms.items() if m.src == X and m.dst == Y]

    def identity(self, X) -> Label:
        ident = tuple((x, x) for x in self.objects[X])
        names = self._by_map.get((X, X, ident), [])
        if not names:
            raise CategoryError(f"object {render(X)} has no identity", X)
        return names[0]

    def lookup(self, src, dst, mapping: dict) -> Label:
        names = self._by_map.get((src, dst, self.freeze(src, mapping)), [])
        if not names:
            raise CategoryError("composite is not a morphism of the category", (src, dst))
        return names[0]

    def compose(self, g: Label, f: Label) -> Label:
        """``g o f``: first ``f``, then ``g``."""
        got = self._composite.get((g, f))
        if got is not None:
            return got
        mf, mg = self.morphisms[f], self.morphisms[g]
        if mf.dst != mg.src:
            raise CategoryError(f"{render(g)} o {render(f)} is not composable", (g, f))
        dg = mg.as_dict()
        got = self.lookup(mf.src, mg.dst, {x: dg[y] for x, y in mf.mapping})
        self._composite[(g, f)] = got
        return got

    def composable(self):
        for f, mf in self.morphisms.items():
            for g, mg in self.morphisms.items():
                if mf.dst == mg.src:
                    yield g, f

    def __repr__(self) -> str:
        return f"SmallConcreteCategory({len(self.objects)} objects, {len(self.morphisms)} morphisms)"


def validate_category(C: SmallConcreteCategory) -> Report:
    rep = Report("category")
    bad_maps = []
    for n, m in C.morphisms.items():
        if m.src not in C.objects or m.dst not in C.objects:
            bad_maps.append(n)
            continue
        d = m.as_dict()
        if set(d) != set(C.objects[m.src]) or not set(d.values()) <= set(C.objects[m.dst]):
            bad_maps.append(n)
    rep.check("morphisms are maps between objects", not bad_maps,
              ", ".join(render(n) for n in bad_maps[:10]))
    if bad_maps:
        return rep
    no_id = []
    for X in C.objects:
        try:
            C.identity(X)
        except CategoryError:
            no_id.append(X)
    rep.check("identities", not no_id, ", ".join(render(x) for x in no_id))
    dup = [k for k, v in C._by_map.items() if len(v) > 1]
    rep.check("no map named twice in one hom-set", not dup,
              ", ".join(render(C._by_map[k][0]) for k in dup[:10]))
    missing = []
    for g, f in C.composable():
        try:
            C.compose(g, f)
        except CategoryError:
            missing.append((g, f))
    rep.check("closed under composition", not missing,
              "; ".join(f"{render(g)} o {render(f)}" for g, f in missing[:10]))
    if not missing and not no_id:
        assoc = all(C.compose(h, C.compose(g, f)) == C.compose(C.compose(h, g), f)
                    for g, f in C.composable() for h in C.morphisms
                    if C.morphisms[h].src == C.morphisms[g].dst)
        rep.check("associative", assoc)
        unit = all(C.compose(f, C.identity(C.morphisms[f].src)) == f
                   and C.compose(C.identity(C.morphisms[f].dst), f) == f for f in C.morphisms)
        rep.check("identity laws", unit)
    return rep


def is_injective(m: Morphism) -> bool:
    vals = [y for _, y in m.mapping]
    return len(set(vals)) == len(vals)


def is_monomorphism(C: SmallConcreteCategory, f: Label) -> bool:
    """Left cancellable: ``f o g1 = f o g2`` implies ``g1 = g2``."""
    X = C.morphisms[f].src
    into = [g for g, m in C.morphisms.items() if m.dst == X]
    for g1, g2 in itertools.combinations(into, 2):
        if C.morphisms[g1].src == C.morphisms[g2].src and C.compose(f, g1) == C.compose(f, g2):
            return False
    return True


def is_surjective(C: SmallConcreteCategory, m: Morphism) -> bool:
    return {y for _, y in m.mapping} == set(C.objects[m.dst])


def is_epimorphism(C: SmallConcreteCategory, f: Label) -> bool:
    """Right cancellable: ``g1 o f = g2 o f`` implies ``g1 = g2``."""
    Y = C.morphisms[f].dst
    out = [g for g, m in C.morphisms.items() if m.src == Y]
    for g1, g2 in itertools.combinations(out, 2):
        if C.morphisms[g1].dst == C.morphisms[g2].dst and C.compose(g1, f) == C.compose(g2, f):
            return False
    return True


# ---------------------------------------------------------------------------
# functors and natural transformations


@dataclass
class FunctorData:
    source: SmallConcreteCategory
    target: SmallConcreteCategory
    objects: dict
    morphisms: dict


def validate_functor(F: FunctorData) -> Report:
    rep = Report("functor")
    A, B = F.source, F.target
    rep.check("object map total", set(F.objects) == set(A.objects)
              and all(v in B.objects for v in F.objects.values()))
    rep.check("morphism map total", set(F.morphisms) == set(A.morphisms)
              and all(v in B.morphisms for v in F.morphisms.values()))
    if not rep.ok:
        return rep
    ends = all(B.morphisms[F.morphisms[f]].src == F.objects[m.src]
               and B.morphisms[F.morphisms[f]].dst == F.objects[m.dst] for f, m in A.morphisms.items())
    rep.check("sources and targets", ends)
    rep.check("identities", all(F.morphisms[A.identity(X)] == B.identity(F.objects[X]) for X in A.objects))
    rep.check("composition", all(F.morphisms[A.compose(g, f)] == B.compose(F.morphisms[g], F.morphisms[f])
                                 for g, f in A.composable()))
    return rep


def check_faithfulness(F: FunctorData) -> dict:
    A = F.source
    faithful = True
    for X in A.objects:
        for Y in A.objects:
            hom = A.homset(X, Y)
            if len({F.morphisms[f] for f in hom}) != len(hom):
                faithful = False
    total = len(set(F.morphisms.values())) == len(F.morphisms)
    inj_obj = len(set(F.objects.values())) == len(F.objects)
    return {"faithful": faithful, "totally_faithful": total, "injective_on_objects": inj_obj}


@dataclass
class NatTransf:
    """Components ``X -> dict F(X) -> G(X)``, with ``F`` and ``G`` from the same source."""
    F: FunctorData
    G: FunctorData
    components: dict


def naturality_failures(t: NatTransf) -> list:
    A, F, G = t.F.source, t.F, t.G
    bad = []
    for f, m in A.morphisms.items():
        Ff = F.target.morphisms[F.morphisms[f]].as_dict()
        Gf = G.target.morphisms[G.morphisms[f]].as_dict()
        tx, ty = t.components[m.src], t.components[m.dst]
        for c in F.target.objects[F.objects[m.src]]:
            if ty[Ff[c]] != Gf[tx[c]]:
                bad.append((f, c))
    return bad


def identity_functor(C: SmallConcreteCategory) -> FunctorData:
    return FunctorData(C, C, {X: X for X in C.objects}, {f: f for f in C.morphisms})


# ---------------------------------------------------------------------------
# the cometic functor


def eligible_triplets(C: SmallConcreteCategory, Y) -> list[tuple]:
    """Phi(Y): all ``<f, x, f(x)>`` with ``f`` ending in ``Y``."""
    out = []
    for n, m in C.morphisms.items():
        if m.dst == Y:
            out += [(n, x, y) for x, y in m.mapping]
    return sorted(out, key=render)


def cometic_object(C: SmallConcreteCategory, Y) -> list[tuple]:
    return eligible_triplets(C, Y)


def cometic_morphism(C: SmallConcreteCategory, g: Label) -> dict:
    """Phi(g): ``<f, x, y> -> <g o f, x, g(y)>``."""
    mg = C.morphisms[g]
    dg = mg.as_dict()
    return {(f, x, y): (C.compose(g, f), x, dg[y]) for f, x, y in eligible_triplets(C, mg.src)}


def trivial_triplet(C: SmallConcreteCategory, X, x) -> tuple:
    """iota_X(x) = <1_X, x, x>."""
    return (C.identity(X), x, x)


def projection_component(C: SmallConcreteCategory, X) -> dict:
    """pi_X: Phi(X) -> X, the third component."""
    return {c: c[2] for c in eligible_triplets(C, X)}


def cometic_functor(C: SmallConcreteCategory) -> FunctorData:
    """Phi as a functor from ``C`` onto its image; morphism ``g`` becomes ``<Phi,g>``."""
    D = SmallConcreteCategory({X: eligible_triplets(C, X) for X in C.objects})
    for g, m in C.morphisms.items():
        D.add_map(("Phi", g), m.src, m.dst, cometic_morphism(C, g))
    return FunctorData(C, D, {X: X for X in C.objects}, {g: ("Phi", g) for g in C.morphisms})


def cometic_projection(C: SmallConcreteCategory, Phi: FunctorData | None = None) -> NatTransf:
    Phi = Phi or cometic_functor(C)
    return NatTransf(Phi, identity_functor(C), {X: projection_component(C, X) for X in C.objects})


def verify_theorem_thmcat(C: SmallConcreteCategory) -> Report:
    """Monomorphisms are exactly the morphisms with injective cometic image, and pi is natural."""
    rep = Report("cometic functor and projection")
    base = validate_category(C)
    rep.merge(base, "category: ")
    if not base.ok:
        return rep
    Phi = cometic_functor(C)
    rep.merge(validate_category(Phi.target), "image category: ")
    rep.merge(validate_functor(Phi), "Phi: ")
    faith = check_faithfulness(Phi)
    rep.check("Phi totally faithful", faith["totally_faithful"])
    rep.check("total faithfulness = faithful + injective on objects",
              faith["totally_faithful"] == (faith["faithful"] and faith["injective_on_objects"]))
    pi = cometic_projection(C, Phi)
    rep.check("pi natural", not naturality_failures(pi))
    for X, comp in pi.components.items():
        rep.check(f"pi_{render(X)} surjective", set(comp.values()) == set(C.objects[X]))
        rep.check(f"pi_{render(X)} o iota_{render(X)} = id",
                  all(comp[trivial_triplet(C, X, x)] == x for x in C.objects[X]))
    for f, m in C.morphisms.items():
        Pf = Phi.target.morphisms[Phi.morphisms[f]]
        mono, inj = is_monomorphism(C, f), is_injective(Pf)
        rep.check(f"{render(f)}: mono={mono} iff Phi-injective={inj}", mono == inj)
        if inj:
            rep.check(f"{render(f)}: Phi-injective implies mono", mono)
        back = {x: pi.components[m.dst][Pf.as_dict()[trivial_triplet(C, m.src, x)]] for x in C.objects[m.src]}
        rep.check(f"{render(f)} = pi o Phi(f) o iota", back == m.as_dict())
    return rep


# ---------------------------------------------------------------------------
# fixtures built from bounded posets


def monotone01_maps(P: Poset, Q: Poset, injective: bool = False):
    """All {0,1}-preserving monotone maps ``P -> Q`` (bounded posets), by backtracking."""
    els = sorted(P.elements, key=lambda x: P.heights()[P.index[x]])
    p0, p1, q0, q1 = P.bottom(), P.top(), Q.bottom(), Q.top()
    if p0 == p1 and q0 != q1:
        return
    img: dict = {}

    def go(k):
        if k == len(els):
            yield dict(img)
            return
        x = els[k]
        cands = [q0] if x == p0 else [q1] if x == p1 else Q.elements
        for y in cands:
            if injective and y in img.values():
                continue
            if all((not P.le(z, x) or Q.le(img[z], y)) and (not P.le(x, z) or Q.le(y, img[z])) for z in img):
                img[x] = y
                yield from go(k + 1)
                del img[x]

    yield from go(0)


def map_name(X, Y, m: dict, P: Poset) -> str:
    return f"{X}>{Y}[" + ",".join(f"{render(x)}:{render(m[x])}" for x in P.elements) + "]"


def build_example_category(D1: dict, D2: dict) -> SmallConcreteCategory:
    """Objects ``D1 + D2`` (name -> bounded poset); injective monotone {0,1}-maps inside
    ``D1``, all monotone {0,1}-maps from ``D2`` to ``D1``, and identities on ``D2``."""
    if not D1:
        raise CategoryError("D1 must be nonempty")
    posets = {**D1, **D2}
    C = SmallConcreteCategory({k: P.elements for k, P in posets.items()})
    for X, P in posets.items():
        for Y, Q in D1.items():
            inj = X in D1
            for m in monotone01_maps(P, Q, injective=inj):
                C.add_map(map_name(X, Y, m, P), X, Y, m)
    for X, P in D2.items():
        if X not in D1:
            C.add_map(map_name(X, X, {x: x for x in P.elements}, P), X, X, {x: x for x in P.elements})
    rep = validate_category(C)
    if not rep.ok:
        raise CategoryError("example category is not closed: " + str(rep.failures))
    return C


def full_map_category(posets: dict) -> SmallConcreteCategory:
    """All monotone {0,1}-maps between the given bounded posets."""
    C = SmallConcreteCategory({k: P.elements for k, P in posets.items()})
    for X, P in posets.items():
        for Y, Q in posets.items():
            for m in monotone01_maps(P, Q):
                C.add_map(map_name(X, Y, m, P), X, Y, m)
    return C


def automorphism_category(name, P: Poset) -> SmallConcreteCategory:
    C = SmallConcreteCategory({name: P.elements})
    for m in monotone01_maps(P, P, injective=True):
        C.add_map(map_name(name, name, m, P), name, name, m)
    return C


def categorified_poset(P: Poset) -> SmallConcreteCategory:
    """One morphism ``x -> y`` per ``x <= y``, realized as the inclusion of down-sets."""
    C = SmallConcreteCategory({x: P.downset(x) for x in P.elements})
    for x, y in P.pairs():
        C.add_map(("le", x, y), x, y, {z: z for z in P.downset(x)})
    return C
