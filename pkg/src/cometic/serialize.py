"""JSON documents for posets, lattices, colorings, gadgets, categories and functors.

Labels are strings or nested arrays (arrays load back as tuples).  Output is
canonical: sorted keys and sorted relation lists, so equal structures serialize to
identical bytes.
"""
from __future__ import annotations

import json
from pathlib import Path

import jsonschema

from .category import SmallConcreteCategory
from .gadgets import Gadget
from .lift import PosetFunctor
from .order import Lattice, Poset, QuasiOrder, label_key, lattice_from_poset, quasiorder_closure
from .quasicolor import QuasiColoredLattice


class DocumentError(ValueError):
    def __init__(self, msg: str, path: str = "$"):
        super().__init__(f"{path}: {msg}")
        self.path = path


_LABEL = {"anyOf": [{"type": "string"}, {"type": "array", "items": {"$ref": "#/$defs/label"}}]}
_DEFS = {"label": _LABEL,
         "pair": {"type": "array", "items": {"$ref": "#/$defs/label"}, "minItems": 2, "maxItems": 2}}

POSET_SCHEMA = {
    "$defs": _DEFS,
    "type": "object",
    "required": ["elements", "le"],
    "properties": {
        "elements": {"type": "array", "items": {"$ref": "#/$defs/label"}},
        "le": {"type": "array", "items": {"$ref": "#/$defs/pair"}},
        "bounded": {"type": "boolean"},
    },
}

COLORED_SCHEMA = {
    "$defs": _DEFS,
    "type": "object",
    "required": ["elements", "le", "colors", "gamma"],
    "properties": {
        "colors": POSET_SCHEMA,
        "gamma": {"type": "array", "items": {"type": "array", "minItems": 3, "maxItems": 3,
                                             "items": {"$ref": "#/$defs/label"}}},
    },
}

BLUEPRINT_SCHEMA = {
    "$defs": _DEFS,
    "type": "object",
    "required": ["elements", "le", "boundary", "rank", "orientation"],
    "properties": {
        "boundary": {"type": "object",
                     "required": ["0", "a_p", "b_p", "a_q", "b_q", "1"],
                     "additionalProperties": {"$ref": "#/$defs/label"}},
        "rank": {"enum": [0, 1, 2]},
        "orientation": {"enum": ["up", "dn", "double"]},
        "p": {"$ref": "#/$defs/label"},
        "q": {"$ref": "#/$defs/label"},
    },
}

CATEGORY_SCHEMA = {
    "$defs": _DEFS,
    "type": "object",
    "required": ["objects", "morphisms"],
    "properties": {
        "objects": {"type": "object", "additionalProperties": {"type": "array", "items": {"$ref": "#/$defs/label"}}},
        "morphisms": {"type": "array", "items": {
            "type": "object",
            "required": ["name", "src", "dst", "map"],
            "properties": {
                "name": {"$ref": "#/$defs/label"},
                "src": {"type": "string"},
                "dst": {"type": "string"},
                "map": {"anyOf": [{"type": "object"}, {"type": "array", "items": {"$ref": "#/$defs/pair"}}]},
            },
        }},
    },
}

FUNCTOR_SCHEMA = {
    "$defs": _DEFS,
    "type": "object",
    "required": ["posets", "maps"],
    "properties": {
        "posets": {"type": "object", "additionalProperties": POSET_SCHEMA},
        "maps": {"type": "array", "items": {
            "type": "object", "required": ["morphism", "map"],
            "properties": {"morphism": {"$ref": "#/$defs/label"},
                           "map": {"anyOf": [{"type": "object"},
                                             {"type": "array", "items": {"$ref": "#/$defs/pair"}}]}},
        }},
    },
}


def _validate(doc, schema) -> None:
    v = jsonschema.Draft202012Validator(schema)
    errs = sorted(v.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errs:
        e = errs[0]
        path = "$" + "".join(f"[{p}]" if isinstance(p, int) else f".{p}" for p in e.absolute_path)
        raise DocumentError(e.message, path)


def to_label(x):
    return tuple(to_label(y) for y in x) if isinstance(x, list) else x


def from_label(x):
    return [from_label(y) for y in x] if isinstance(x, tuple) else x


def _sorted_labels(xs):
    return sorted(xs, key=label_key)


def _pairs(ps):
    return sorted(([from_label(a), from_label(b)] for a, b in ps), key=lambda p: json.dumps(p))


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def load_json(path) -> dict:
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"invalid JSON: {e.msg}", f"line {e.lineno} col {e.colno}") from None


def write_json(path, doc) -> None:
    Path(path).write_text(dumps(doc), encoding="utf-8")


# ---------------------------------------------------------------------------
# posets and lattices


def poset_doc(P: QuasiOrder, bounded: bool | None = None) -> dict:
    """Covers only for posets (the closure is rebuilt on load); the full relation otherwise."""
    rel = P.covers() if isinstance(P, Poset) else [(x, y) for x, y in P.pairs() if x != y]
    doc = {"elements": [from_label(x) for x in _sorted_labels(P.elements)], "le": _pairs(rel)}
    if bounded is None and isinstance(P, Poset):
        bounded = P.is_bounded()
    if bounded is not None:
        doc["bounded"] = bounded
    return doc


def parse_quasiorder(doc) -> QuasiOrder:
    _validate(doc, POSET_SCHEMA)
    els = [to_label(x) for x in doc["elements"]]
    try:
        return quasiorder_closure(els, [(to_label(a), to_label(b)) for a, b in doc["le"]])
    except ValueError as e:
        raise DocumentError(str(e), "$.le") from None


def parse_poset(doc) -> Poset:
    q = parse_quasiorder(doc)
    try:
        P = Poset(q.elements, q.up)
    except ValueError as e:
        raise DocumentError(str(e), "$.le") from None
    if doc.get("bounded") and not P.is_bounded():
        raise DocumentError("poset is flagged bounded but has no 0 or 1", "$.bounded")
    return P


def parse_lattice(doc) -> Lattice:
    """Parse a poset document and require a lattice order (raises ``OrderError`` otherwise)."""
    return lattice_from_poset(parse_poset(doc))


def colored_doc(Q: QuasiColoredLattice) -> dict:
    doc = poset_doc(Q.lattice)
    doc["colors"] = poset_doc(Q.colors, bounded=False)
    doc["gamma"] = sorted(([from_label(x), from_label(y), from_label(c)] for (x, y), c in Q.gamma.items()),
                          key=lambda t: json.dumps(t))
    return doc


def parse_colored(doc) -> QuasiColoredLattice:
    _validate(doc, COLORED_SCHEMA)
    L = parse_lattice(doc)
    H = parse_quasiorder(doc["colors"])
    gamma = {(to_label(x), to_label(y)): to_label(c) for x, y, c in doc["gamma"]}
    return QuasiColoredLattice(L, H, gamma)


def blueprint_doc(g: Gadget) -> dict:
    doc = poset_doc(g.lattice)
    doc.update({"boundary": {k: from_label(v) for k, v in g.boundary.items()},
                "rank": g.rank, "orientation": g.orientation,
                "p": from_label(g.p), "q": from_label(g.q)})
    return doc


def parse_blueprint(doc) -> Gadget:
    _validate(doc, BLUEPRINT_SCHEMA)
    L = parse_lattice(doc)
    bd = {k: to_label(v) for k, v in doc["boundary"].items()}
    return Gadget(doc["rank"], doc["orientation"], to_label(doc.get("p", "p")),
                  to_label(doc.get("q", "q")), L, bd)


# ---------------------------------------------------------------------------
# categories and functors


def category_doc(C: SmallConcreteCategory) -> dict:
    return {
        "objects": {str(k): [from_label(x) for x in v] for k, v in C.objects.items()},
        "morphisms": sorted(({"name": from_label(m.name), "src": m.src, "dst": m.dst,
                              "map": [[from_label(x), from_label(y)] for x, y in m.mapping]}
                             for m in C.morphisms.values()), key=lambda d: json.dumps(d["name"])),
    }


def _parse_map(m) -> dict:
    if isinstance(m, dict):
        return {k: to_label(v) for k, v in m.items()}
    return {to_label(a): to_label(b) for a, b in m}


def parse_category(doc) -> SmallConcreteCategory:
    _validate(doc, CATEGORY_SCHEMA)
    C = SmallConcreteCategory({k: [to_label(x) for x in v] for k, v in doc["objects"].items()})
    for i, m in enumerate(doc["morphisms"]):
        if m["src"] not in C.objects or m["dst"] not in C.objects:
            raise DocumentError("unknown object", f"$.morphisms[{i}]")
        try:
            C.add_map(to_label(m["name"]), m["src"], m["dst"], _parse_map(m["map"]))
        except ValueError as e:
            raise DocumentError(str(e), f"$.morphisms[{i}].map") from None
    return C


def functor_doc(F: PosetFunctor) -> dict:
    return {
        "posets": {str(k): poset_doc(P) for k, P in F.posets.items()},
        "maps": sorted(({"morphism": from_label(f), "map": [[from_label(x), from_label(y)] for x, y in
                                                            sorted(m.items(), key=lambda kv: label_key(kv[0]))]}
                        for f, m in F.maps.items()), key=lambda d: json.dumps(d["morphism"])),
    }


def parse_functor(doc, C: SmallConcreteCategory) -> PosetFunctor:
    _validate(doc, FUNCTOR_SCHEMA)
    posets = {k: parse_poset(v) for k, v in doc["posets"].items()}
    maps = {to_label(d["morphism"]): _parse_map(d["map"]) for d in doc["maps"]}
    return PosetFunctor(C, posets, maps)


def homomorphism_doc(src, dst, g: dict) -> dict:
    return {"source": from_label(src), "target": from_label(dst),
            "map": _pairs(g.items())}

