"""Command-line entry point: ``cometic <command> ...``."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import serialize as io
from .category import cometic_functor, verify_theorem_thmcat
from .congruence import princ_poset
from .dot import export_dot
from .gadgets import verify_gadget
from .lift import lift_functor, verify_lifting
from .nlattice import ColorUniverse, build_big, build_LHnu, check_big
from .order import OrderError
from .quasicolor import validate_quasicoloring
from .suite import default_manifest, run_suite


def _out(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _detect(doc: dict) -> str:
    if "morphisms" in doc:
        return "category"
    if "boundary" in doc:
        return "blueprint"
    if "gamma" in doc:
        return "colored"
    return "lattice"


def cmd_validate(a) -> int:
    doc = io.load_json(a.document)
    kind = a.kind or _detect(doc)
    if kind == "category":
        from .category import validate_category
        rep = validate_category(io.parse_category(doc))
    elif kind == "blueprint":
        rep = verify_gadget(io.parse_blueprint(doc))
    elif kind == "colored":
        rep = validate_quasicoloring(io.parse_colored(doc))
    elif kind == "poset":
        io.parse_poset(doc)
        print("poset: PASS")
        return 0
    else:
        io.parse_lattice(doc)
        print("lattice: PASS")
        return 0
    print(rep)
    return 0 if rep.ok else 1


def cmd_princ(a) -> int:
    L = io.parse_lattice(io.load_json(a.lattice))
    P = princ_poset(L)
    doc = io.poset_doc(P.poset)
    doc["congruences"] = {P.name(k): c.serialize() for k, c in enumerate(P.congruences)}
    _out(io.dumps(doc), a.output)
    return 0


SHIPPED_BLUEPRINT = Path(__file__).parent / "data" / "blueprint_rank2_up.json"


def cmd_gadget(a) -> int:
    rep = verify_gadget(io.parse_blueprint(io.load_json(a.blueprint or SHIPPED_BLUEPRINT)))
    print(rep)
    return 0 if rep.ok else 1


def _big_doc(big) -> dict:
    doc = io.colored_doc(big.colored) if big.colored else io.poset_doc(big.lattice)
    doc["anchors"] = sorted(([io.from_label(p), io.from_label(a), io.from_label(b)]
                             for p, (a, b) in big.anchors.items()), key=json.dumps)
    doc["Z"] = sorted((io.from_label(z) for z in big.universe.Z), key=json.dumps)
    doc["U"] = sorted((io.from_label(u) for u in big.universe.U), key=json.dumps)
    return doc


def _pairs_file(path) -> set:
    if not path:
        return set()
    return {(io.to_label(p), io.to_label(q)) for p, q in io.load_json(path)}


def cmd_build_n(a) -> int:
    doc = io.load_json(a.colors)
    H = [io.to_label(x) for x in doc["elements"]]
    Z = {io.to_label(x) for x in doc.get("Z", ["0"])}
    U = {io.to_label(x) for x in doc.get("U", ["1"])}
    uni = ColorUniverse(H, Z, U, _pairs_file(a.I), _pairs_file(a.J))
    big = build_big(uni)
    rep = check_big(big)
    print(rep, file=sys.stderr)
    _out(io.dumps(_big_doc(big)), a.output)
    return 0 if rep.ok else 1


def cmd_build_l(a) -> int:
    doc = io.load_json(a.quasiorder)
    H = io.parse_quasiorder(doc)
    zero = io.to_label(doc.get("zero", sorted(H.least_elements(), key=json.dumps)[0]))
    one = io.to_label(doc.get("one", sorted(H.greatest_elements(), key=json.dumps)[0]))
    big = build_LHnu(H, zero, one)
    rep = check_big(big)
    print(rep, file=sys.stderr)
    _out(io.dumps(_big_doc(big)), a.output)
    return 0 if rep.ok else 1


def cmd_cometic(a) -> int:
    C = io.parse_category(io.load_json(a.category))
    if a.action == "verify":
        rep = verify_theorem_thmcat(C)
        print(rep)
        return 0 if rep.ok else 1
    D = cometic_functor(C).target
    _out(io.dumps(io.category_doc(D)), a.output)
    return 0


def _lift_files(LF) -> dict[str, str]:
    files: dict[str, str] = {}
    index = {"objects": {}, "morphisms": {}}
    A = LF.F.category
    for k, X in enumerate(sorted(A.objects, key=json.dumps)):
        name = f"lattices/L{k}.json"
        index["objects"][X] = name
        files[name] = io.dumps(_big_doc(LF.lattices[X]))
    for k, f in enumerate(sorted(A.morphisms, key=lambda f: json.dumps(io.from_label(f)))):
        m = A.morphisms[f]
        name = f"homs/h{k}.json"
        index["morphisms"][json.dumps(io.from_label(f))] = name
        files[name] = io.dumps(io.homomorphism_doc(m.src, m.dst, LF.maps[f]))
    files["index.json"] = io.dumps(index)
    return files


def cmd_lift(a) -> int:
    if a.args and a.args[0] == "verify":
        if len(a.args) != 2:
            print("usage: cometic lift verify DIR", file=sys.stderr)
            return 2
        d = Path(a.args[1])
        C = io.parse_category(io.load_json(d / "category.json"))
        F = io.parse_functor(io.load_json(d / "functor.json"), C)
        LF = lift_functor(F)
        stale = [n for n, text in _lift_files(LF).items()
                 if not (d / n).exists() or (d / n).read_text(encoding="utf-8") != text]
        rep = verify_lifting(LF)
        rep.check("stored lattices and homomorphisms reproduce", not stale, ", ".join(stale[:5]))
        print(rep)
        return 0 if rep.ok else 1
    if not (a.category and a.functor and a.output):
        print("usage: cometic lift --category C --functor F -o DIR", file=sys.stderr)
        return 2
    cdoc, fdoc = io.load_json(a.category), io.load_json(a.functor)
    C = io.parse_category(cdoc)
    F = io.parse_functor(fdoc, C)
    LF = lift_functor(F)
    rep = verify_lifting(LF)
    out = Path(a.output)
    (out / "lattices").mkdir(parents=True, exist_ok=True)
    (out / "homs").mkdir(exist_ok=True)
    for n, text in _lift_files(LF).items():
        (out / n).write_text(text, encoding="utf-8")
    io.write_json(out / "category.json", io.category_doc(C))
    io.write_json(out / "functor.json", io.functor_doc(F))
    io.write_json(out / "report.json", rep.to_dict())
    print(rep)
    return 0 if rep.ok else 1


def cmd_export_dot(a) -> int:
    doc = io.load_json(a.document)
    try:
        P = io.parse_lattice(doc)
    except OrderError:
        P = io.parse_poset(doc)
    target = princ_poset(P) if a.princ else P
    _out(export_dot(target, a.name), a.output)
    return 0


def cmd_suite(a) -> int:
    if a.manifest:
        manifest = io.load_json(a.manifest)
        base = Path(a.manifest).parent
    else:
        manifest, base = default_manifest(), Path(".")
    rep = run_suite(manifest, base, a.budget_seconds)
    for line in rep.lines():
        print(line)
    if a.output:
        io.write_json(a.output, rep.to_dict())
    return 0 if rep.ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cometic", description="Lattices, principal congruences and lifted functors.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="validate a JSON document")
    s.add_argument("document")
    s.add_argument("--kind", choices=["poset", "lattice", "colored", "blueprint", "category"])
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("princ", help="print Princ(L) as a poset document")
    s.add_argument("lattice")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_princ)

    s = sub.add_parser("gadget", help="gadget tools")
    gs = s.add_subparsers(dest="action", required=True)
    v = gs.add_parser("verify")
    v.add_argument("blueprint", nargs="?", help="defaults to the shipped rank-2 up blueprint")
    v.set_defaults(func=cmd_gadget)

    s = sub.add_parser("build-n", help="build N(H,Z,U;I,J)")
    s.add_argument("--colors", required=True)
    s.add_argument("--I")
    s.add_argument("--J")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_build_n)

    s = sub.add_parser("build-l", help="build L(H,nu) for a quasiordered set")
    s.add_argument("--quasiorder", required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_build_l)

    s = sub.add_parser("cometic", help="cometic functor tools")
    s.add_argument("action", choices=["verify", "image"])
    s.add_argument("category")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_cometic)

    s = sub.add_parser("lift", help="lift a poset-valued functor, or 'lift verify DIR'")
    s.add_argument("args", nargs="*")
    s.add_argument("--category")
    s.add_argument("--functor")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_lift)

    s = sub.add_parser("export-dot", help="DOT cover graph of a poset or lattice document")
    s.add_argument("document")
    s.add_argument("--princ", action="store_true", help="draw Princ(L) instead")
    s.add_argument("--name", default="order")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_export_dot)

    s = sub.add_parser("suite", help="run a check manifest (default: the shipped one)")
    s.add_argument("manifest", nargs="?")
    s.add_argument("--budget-seconds", type=float)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_suite)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (io.DocumentError, OrderError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
