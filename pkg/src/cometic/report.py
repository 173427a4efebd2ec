"""Check reports shared by the validators."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    subject: str
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    def check(self, name: str, ok: bool, detail: str = "") -> bool:
        self.checks.append((name, bool(ok), detail))
        return bool(ok)

    @property
    def ok(self) -> bool:
        return all(c[1] for c in self.checks)

    @property
    def failures(self) -> list[tuple[str, str]]:
        return [(n, d) for n, ok, d in self.checks if not ok]

    def merge(self, other: "Report", prefix: str = "") -> None:
        for n, ok, d in other.checks:
            self.checks.append((prefix + n, ok, d))

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "ok": self.ok,
            "checks": [{"name": n, "ok": ok, "detail": d} for n, ok, d in self.checks],
        }

    def __str__(self) -> str:
        lines = [f"{self.subject}: {'PASS' if self.ok else 'FAIL'}"]
        for n, ok, d in self.checks:
            lines.append(f"  [{'ok' if ok else 'FAIL'}] {n}" + (f" ({d})" if d else ""))
        return "\n".join(lines)
