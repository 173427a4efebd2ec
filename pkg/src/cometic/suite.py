"""Manifest-driven check runner with wall-clock budget accounting."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from pathlib import Path

from . import fixtures
from .category import verify_theorem_thmcat
from .gadgets import build_gadget, verify_gadget
from .lift import lift_functor, verify_lifting
from .nlattice import build_LHnu, check_big
from .report import Report

KINDS = ("gadget", "keylemma", "thmcat", "lifting")


@dataclass
class CheckResult:
    name: str
    kind: str
    expected: str
    outcome: str  # pass | fail | error | timeout
    seconds: float
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.outcome == self.expected


@dataclass
class SuiteReport:
    results: list[CheckResult] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    budget: float | None = None

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def lines(self) -> list[str]:
        out = [f"warning: {w}" for w in self.warnings]
        for r in self.results:
            mark = "ok" if r.ok else "FAIL"
            out.append(f"[{mark}] {r.name} ({r.kind}): {r.outcome}, expected {r.expected}"
                       + (f" - {r.detail}" if r.detail and not r.ok else ""))
        out.append(f"{sum(r.ok for r in self.results)}/{len(self.results)} checks as expected")
        return out

    def to_dict(self) -> dict:
        return {"ok": self.ok, "warnings": self.warnings,
                "results": [{"name": r.name, "kind": r.kind, "expected": r.expected,
                             "outcome": r.outcome, "detail": r.detail} for r in self.results]}


def default_manifest() -> dict:
    checks = [{"name": "rank-2 up gadget and its quotients", "kind": "gadget"}]
    for k in ("chain2", "chain3", "diamond"):
        checks.append({"name": f"L(H) for {k}", "kind": "keylemma", "fixture": k})
    checks.append({"name": "L(H) for cycle-pq", "kind": "keylemma", "fixture": "cycle-pq"})
    for k in fixtures.cometic_fixtures():
        checks.append({"name": f"cometic {k}", "kind": "thmcat", "fixture": k})
    checks.append({"name": "lift automorphisms", "kind": "lifting", "fixture": "automorphisms"})
    return {"checks": checks}


def _resolve(check: dict, base: Path):
    from . import serialize as io

    kind = check["kind"]
    if kind == "gadget":
        if "input" in check:
            return io.parse_blueprint(io.load_json(base / check["input"]))
        return None
    if kind == "keylemma":
        if "input" in check:
            return io.parse_quasiorder(io.load_json(base / check["input"]))
        table = {**fixtures.bounded_posets_upto4(), **fixtures.quasiorders_with_cycles()}
        return table[check["fixture"]]
    if kind == "thmcat":
        if "input" in check:
            return io.parse_category(io.load_json(base / check["input"]))
        return fixtures.cometic_fixtures()[check["fixture"]]
    if kind == "lifting":
        if "category" in check:
            C = io.parse_category(io.load_json(base / check["category"]))
            return io.parse_functor(io.load_json(base / check["functor"]), C)
        return fixtures.lift_fixtures()[check["fixture"]]
    raise ValueError(f"unknown check kind {kind!r}")


def _run_one(kind: str, data) -> Report:
    if kind == "gadget":
        rep = Report("gadgets")
        if data is not None:
            rep.merge(verify_gadget(data))
            return rep
        for rank in (2, 1, 0):
            for o in ("up", "dn", "double"):
                rep.merge(verify_gadget(build_gadget(rank, o, "p", "q")), f"rank {rank} {o}: ")
        return rep
    if kind == "keylemma":
        zero = data.least_elements()[0]
        one = data.greatest_elements()[0]
        return check_big(build_LHnu(data, zero, one))
    if kind == "thmcat":
        return verify_theorem_thmcat(data)
    return verify_lifting(lift_functor(data), full_checks=False)


def run_suite(manifest: dict, base: Path | str = ".", budget: float | None = None) -> SuiteReport:
    base = Path(base)
    out = SuiteReport(budget=budget)
    checks = manifest.get("checks", [])
    if not checks:
        out.warnings.append("manifest has no checks")
        return out
    t0 = time.monotonic()
    for check in checks:
        name, kind = check.get("name", check.get("kind", "?")), check.get("kind", "?")
        expected = check.get("expect", "pass")
        if budget is not None and time.monotonic() - t0 > budget:
            out.results.append(CheckResult(name, kind, expected, "timeout", 0.0, "budget exhausted"))
            continue
        t = time.monotonic()
        try:
            rep = _run_one(kind, _resolve(check, base))
            outcome = "pass" if rep.ok else "fail"
            detail = "; ".join(n for n, _ in rep.failures[:5])
        except ValueError as e:  # invalid structure: the check fails
            outcome, detail = "fail", f"{type(e).__name__}: {e}"
        except Exception as e:  # a crash in one check must not hide the rest
            outcome, detail = "error", f"{type(e).__name__}: {e}"
        out.results.append(CheckResult(name, kind, expected, outcome, time.monotonic() - t, detail))
    return out
