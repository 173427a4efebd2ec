"""Build L(H) for every fixture quasiorder and print size, timing and check status.

    python3 scripts/sweep_quasiorders.py [--only chain3 cycle-pq]
"""
from __future__ import annotations

import argparse
import time
from dataclasses import dataclass, field

from cometic import fixtures
from cometic.nlattice import build_LHnu, check_big


@dataclass
class SweepConfig:
    only: list[str] = field(default_factory=list)
    selfdual: bool = True


def run(cfg: SweepConfig) -> bool:
    cases = {**fixtures.bounded_posets_upto4(), **fixtures.quasiorders_with_cycles()}
    ok_all = True
    print(f"{'H':<16}{'|H|':>4}{'|L|':>6}{'|Princ|':>8}{'sec':>7}  status")
    for name, H in cases.items():
        if cfg.only and name not in cfg.only:
            continue
        t = time.monotonic()
        big = build_LHnu(H, "0", "1")
        rep = check_big(big, selfdual=cfg.selfdual)
        dt = time.monotonic() - t
        ok_all &= rep.ok
        print(f"{name:<16}{len(H):>4}{len(big.lattice):>6}{len(big.engine.princ_masks()):>8}{dt:>7.2f}  "
              f"{'ok' if rep.ok else 'FAIL ' + '; '.join(n for n, _ in rep.failures)}")
    return ok_all


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--only", nargs="*", default=[])
    ap.add_argument("--no-selfdual", action="store_true")
    a = ap.parse_args()
    return 0 if run(SweepConfig(a.only, not a.no_selfdual)) else 1


if __name__ == "__main__":
    raise SystemExit(main())
