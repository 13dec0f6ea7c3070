import time

import pytest

from virw.config import SUITES, RunConfig
from virw.suites import run_suite

ACCEPTANCE_LINES = {}


@pytest.fixture(scope="session")
def suite_run():
    """Every suite once under the default configuration, with wall-clock timings."""
    cfg = RunConfig()
    reports, timings = {}, {}
    for name in SUITES:
        t0 = time.perf_counter()
        reports[name] = run_suite(name, cfg)
        timings[name] = time.perf_counter() - t0
    return reports, timings


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
