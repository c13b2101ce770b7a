import time
from contextlib import contextmanager

import pytest

from perfectcover import catalog

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def groups():
    """Fresh catalog groups, built once per test session."""
    return {name: catalog.CATALOG[name].group() for name in catalog.names()}


@contextmanager
def criterion(number, description, budget_seconds):
    """Times one acceptance criterion and records a pass/fail line."""
    t0 = time.time()
    try:
        yield
    except Exception:
        ACCEPTANCE_LINES.append(f"[criterion {number:2d}] FAIL  {description}")
        raise
    elapsed = time.time() - t0
    if elapsed >= budget_seconds:
        ACCEPTANCE_LINES.append(
            f"[criterion {number:2d}] FAIL  {description} "
            f"(over budget: {elapsed:.1f}s >= {budget_seconds}s)"
        )
        raise AssertionError(
            f"criterion {number} exceeded its {budget_seconds}s budget: {elapsed:.1f}s"
        )
    line = (
        f"[criterion {number:2d}] PASS  {description} "
        f"({elapsed:.1f}s, budget {budget_seconds}s)"
    )
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
