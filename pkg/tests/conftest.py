import sys
import time

import pytest
from hypothesis import settings

settings.register_profile("ci", max_examples=60, deadline=None)
settings.load_profile("ci")


@pytest.fixture(scope="session")
def groups():
    from equihopf.group import SELECTORS, build_group

    return {s: build_group(s) for s in SELECTORS}


_SESSION_START = time.perf_counter()
SUITE_BUDGET = 300.0


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    mod = sys.modules.get("test_acceptance")
    lines = list(getattr(mod, "RESULTS", []))
    if not lines:
        return
    elapsed = time.perf_counter() - _SESSION_START
    ok = elapsed < SUITE_BUDGET
    lines.append(f"{'PASS' if ok else 'FAIL'}  9f   total suite runtime {elapsed:.0f} s < {SUITE_BUDGET:.0f} s")
    terminalreporter.section("acceptance criteria")
    for line in lines:
        terminalreporter.write_line(line)


def pytest_sessionfinish(session, exitstatus):
    if "test_acceptance" in sys.modules and time.perf_counter() - _SESSION_START >= SUITE_BUDGET:
        session.exitstatus = 1
