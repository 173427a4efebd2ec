"""Graphviz DOT for cover graphs, drawn bottom to top."""
from __future__ import annotations

from .congruence import PrincPoset
from .order import Poset, label_key, render


def _q(x) -> str:
    return '"' + render(x).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _group(x):
    """Cluster key of a structured label: the simple frame, a gadget, or none."""
    if isinstance(x, tuple):
        if x and x[0] == "m":
            return ("frame",)
        if len(x) == 5:
            return x[:4]
    return None


def export_dot(P, name: str = "order") -> str:
    """Cover graph of a poset, lattice or Princ poset with deterministic output.

    Anchor elements ``<a,p>`` / ``<b,p>`` are boxed, the frame and each gadget get
    their own cluster.
    """
    if isinstance(P, PrincPoset):
        return _princ_dot(P, name)
    lines = [f"digraph {_q(name)} {{", "  rankdir=BT;", "  node [shape=circle, fontsize=10];"]
    els = sorted(P.elements, key=label_key)
    clusters: dict = {}
    for x in els:
        g = _group(x)
        if g is not None:
            clusters.setdefault(g, []).append(x)
    for k, g in enumerate(sorted(clusters, key=render)):
        title = "frame" if g == ("frame",) else render(g)
        lines.append(f"  subgraph cluster_{k} {{")
        lines.append(f"    label={_q(title)}; style=dashed;")
        for x in clusters[g]:
            lines.append(f"    {_q(x)};")
        lines.append("  }")
    for x in els:
        if isinstance(x, tuple) and len(x) == 2 and x[0] in ("a", "b"):
            lines.append(f"  {_q(x)} [shape=box, style=filled, fillcolor=lightgrey];")
    for x, y in sorted(P.covers(), key=lambda c: (label_key(c[0]), label_key(c[1]))):
        lines.append(f"  {_q(x)} -> {_q(y)} [arrowhead=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _princ_dot(P: PrincPoset, name: str) -> str:
    lines = [f"digraph {_q(name)} {{", "  rankdir=BT;", "  node [shape=box, fontsize=10];"]
    poset: Poset = P.poset
    for k, c in enumerate(P.congruences):
        blocks = " ".join("{" + ",".join(b) + "}" for b in c.serialize() if len(b) > 1) or "Delta"
        if c.is_full():
            blocks = "nabla"
        elif len(blocks) > 60:
            blocks = f"{len(c.nontrivial_blocks())} blocks"
        lines.append(f"  {_q(P.name(k))} [label={_q(blocks)}];")
    for x, y in sorted(poset.covers(), key=lambda c: (label_key(c[0]), label_key(c[1]))):
        lines.append(f"  {_q(x)} -> {_q(y)} [arrowhead=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"
