import time

import numpy as np
import pytest

_ACCEPTANCE = []
_START = time.perf_counter()
SUITE_BUDGET_S = 60.0


@pytest.fixture
def criterion():
    """Record one acceptance line: ``criterion(name, ok, detail)``."""

    def record(name, ok, detail=""):
        _ACCEPTANCE.append((name, bool(ok), detail))
        return ok

    return record


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for name, ok, detail in _ACCEPTANCE:
        tr.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
    elapsed = time.perf_counter() - _START
    tr.write_line(f"{'PASS' if elapsed < SUITE_BUDGET_S else 'FAIL'}  7. full suite runtime  {elapsed:.1f} s (< {SUITE_BUDGET_S:.0f} s)")


def pytest_sessionfinish(session, exitstatus):
    if time.perf_counter() - _START >= SUITE_BUDGET_S and exitstatus == 0:
        session.exitstatus = 1
