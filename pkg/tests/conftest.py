import time

import pytest

from cometic import fixtures
from cometic.lift import lift_functor

_LIFTS: dict = {}


def lifted(name):
    """Lift a named functor fixture once per session; returns (lifted functor, seconds)."""
    if name not in _LIFTS:
        t = time.monotonic()
        LF = lift_functor(fixtures.lift_fixtures()[name])
        _LIFTS[name] = (LF, time.monotonic() - t)
    return _LIFTS[name]


@pytest.fixture
def announce(capsys):
    """Print one uncaptured result line for an acceptance criterion."""
    def emit(number: int, title: str, ok: bool, seconds: float, budget: float, detail: str = ""):
        status = "PASS" if ok and seconds < budget else "FAIL"
        line = f"[acceptance {number}] {status} {title} ({seconds:.2f}s of {budget:.0f}s)"
        if detail:
            line += f" {detail}"
        with capsys.disabled():
            print("\n" + line)
        return status == "PASS"
    return emit
