"""Search for a rank-2 upward gadget satisfying the gadget contract.

Construction: take a simple lattice ``M0`` of length 3, double an interval ``I1``
(its doubled pairs become the q-colored edges), then double an interval ``I2`` of the
result (its doubled pairs become the p-colored edges).  Every choice of intervals and
of boundary pairs ``<a_p, b_p>`` / ``<a_q, b_q>`` among the doubled pairs is tested
against the full contract; hits are printed as cover lists.

    python scripts/find_gadget.py --max-size 9 --hits 3
"""
from __future__ import annotations

import argparse
import itertools
import random

from cometic.congruence import CongruenceEngine, is_simple
from cometic.order import Lattice, OrderError, bits


def double(L: Lattice, interval: set) -> Lattice:
    """Day's doubling of a convex subset; doubled elements become ``(x, 0)`` and ``(x, 1)``."""
    els = []
    for x in L.elements:
        if x in interval:
            els += [(x, 0), (x, 1)]
        else:
            els.append(x)

    def base(e):
        return e[0] if isinstance(e, tuple) and len(e) == 2 and e[0] in interval and e[1] in (0, 1) else e

    def le(e, f):
        be, bf = base(e), base(f)
        if not L.le(be, bf):
            return False
        if e != be and f != bf:
            return e[1] <= f[1]
        return True

    pairs = [(e, f) for e in els for f in els if le(e, f)]
    return Lattice.from_pairs(els, pairs)


def intervals(L: Lattice):
    for i in range(len(L)):
        for j in bits(L.up[i]):
            yield {L.elements[k] for k in bits(L.up[i] & L.down[j])}


def convex_sets(L: Lattice, max_size: int = 4):
    """Proper convex subsets connected in the cover graph, excluding 0 and 1."""
    nbr = [0] * len(L)
    for i, j in L.covers_idx():
        nbr[i] |= 1 << j
        nbr[j] |= 1 << i
    inner = ((1 << len(L)) - 1) & ~(1 << L.zero) & ~(1 << L.one)
    seen = set()
    frontier = [1 << i for i in bits(inner)]
    while frontier:
        nxt = []
        for m in frontier:
            if m in seen:
                continue
            seen.add(m)
            # convex: nothing strictly between two members lies outside
            hull = 0
            for i in bits(m):
                for j in bits(m):
                    hull |= L.up[i] & L.down[j]
            if hull == m:
                yield {L.elements[k] for k in bits(m)}
            if bin(m).count("1") < max_size:
                ext = 0
                for i in bits(m):
                    ext |= nbr[i]
                for k in bits(ext & inner & ~m):
                    nxt.append(m | 1 << k)
        frontier = nxt


def random_simple(rng: random.Random, n: int, length: int, tries: int = 20000):
    seen = []
    for _ in range(tries):
        lev = {0: ["0"], length: ["1"]}
        rest = n - 2
        for h in range(1, length):
            lev[h] = []
        names = [f"m{k}" for k in range(rest)]
        for k, nm in enumerate(names):
            lev[1 + k % (length - 1) if k < length - 1 else rng.randint(1, length - 1)].append(nm)
        pairs = []
        for h in range(1, length + 1):
            for x in lev[h]:
                below = lev[h - 1]
                pick = [y for y in below if rng.random() < 0.5] or [rng.choice(below)]
                pairs += [(y, x) for y in pick]
        for h in range(1, length):
            for y in lev[h]:
                if not any(p[0] == y for p in pairs):
                    pairs.append((y, rng.choice(lev[h + 1])))
        try:
            L = Lattice.from_pairs([x for h in sorted(lev) for x in lev[h]], pairs)
        except OrderError:
            continue
        if L.length() == length and is_simple(L):
            key = sorted(sorted(str(c) for c in L.covers()))
            if key not in seen:
                seen.append(key)
                yield L


def contract_ok(G: Lattice, ap, bp, aq, bq) -> bool:
    if G.length() != 5:
        return False
    cov = set(G.covers())
    if (ap, bp) not in cov or (aq, bq) not in cov:
        return False
    top, bot = G.top_label, G.bottom_label
    if G.join(ap, aq) != top or G.meet(bp, bq) != bot:
        return False
    ix = G.index
    bmask = sum(1 << ix[x] for x in (bot, ap, bp, aq, bq, top))
    for i in range(len(G)):
        ups = G.up[i] & bmask
        if not any(G.up[b] & bmask == ups for b in bits(ups)):
            return False
        dns = G.down[i] & bmask
        if not any(G.down[b] & bmask == dns for b in bits(dns)):
            return False
    for lo, hi in ((bot, ap), (bot, aq), (bp, top), (bq, top)):
        if G.interval_length(lo, hi) > 2:
            return False
    if not separated(G, ap, bp, aq, bq):
        return False
    E = CongruenceEngine(G)
    alpha, beta, full = E.cg(ap, bp), E.cg(aq, bq), E.full_mask()
    if not (alpha and alpha & ~beta == 0 and alpha != beta and beta != full):
        return False
    if not all(E.cg_mask(i, j) in (alpha, beta, full) for i, j in G.covers_idx()):
        return False
    boundary = {bot, top, ap, bp, aq, bq}
    for mask in (alpha, beta):
        for block in E.to_congruence(mask).nontrivial_blocks():
            if set(block) & boundary and set(block) not in ({ap, bp}, {aq, bq}):
                return False
    return double_is_lattice(G, ap, bp, aq, bq)


def separated(G: Lattice, ap, bp, aq, bq) -> bool:
    """Interior elements under one anchor pair join the other pair's bottom to 1, and dually."""
    top, bot = G.top_label, G.bottom_label
    for x in G.elements:
        if x in (bot, top, ap, bp, aq, bq):
            continue
        for a1, b1, a2, b2 in ((ap, bp, aq, bq), (aq, bq, ap, bp)):
            if G.le(x, b1) and G.join(x, a2) != top:
                return False
            if G.le(a1, x) and G.meet(x, b2) != bot:
                return False
    return True


def double_is_lattice(G: Lattice, ap, bp, aq, bq) -> bool:
    from cometic.order import Poset, dual, is_lattice_order
    ren = {G.bottom_label: G.top_label, G.top_label: G.bottom_label, ap: bp, bp: ap, aq: bq, bq: aq}
    D = dual(G, rename=lambda x: ren.get(x, ("dual", x)))
    P = Poset.from_pairs(list(G.elements) + [x for x in D.elements if x not in G.index], G.pairs() + D.pairs())
    return is_lattice_order(P)[0]


def search(M0: Lattice, hits: list, want: int):
    for I1 in convex_sets(M0):
        M1 = double(M0, I1)
        if M1.length() < 4:
            continue
        for I2 in convex_sets(M1):
            G = double(M1, I2)
            if G.length() != 5:
                continue
            cov = G.covers()
            for (ap, bp), (aq, bq) in itertools.permutations(cov, 2):
                if contract_ok(G, ap, bp, aq, bq):
                    hits.append((G, ap, bp, aq, bq, I1, I2))
                    print(f"hit |G|={len(G)} I1={sorted(map(str, I1))} I2={sorted(map(str, I2))}")
                    print("  a_p,b_p,a_q,b_q =", ap, bp, aq, bq)
                    print("  covers =", sorted(G.covers(), key=str), flush=True)
                    if len(hits) >= want:
                        return


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-size", type=int, default=9)
    ap.add_argument("--hits", type=int, default=3)
    ap.add_argument("--min-size", type=int, default=5)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    hits: list = []
    for n in range(args.min_size, args.max_size + 1):
        for M0 in random_simple(rng, n, 3, tries=3000):
            print(f"M0 size {n}: {sorted(M0.covers())}", flush=True)
            search(M0, hits, args.hits)
            if len(hits) >= args.hits:
                return


if __name__ == "__main__":
    main()
