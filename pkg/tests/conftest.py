from __future__ import annotations

import os
import sys
import time

from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default",
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

#: one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE: list[str] = []

#: wall-clock budget of the whole suite, in seconds
SUITE_BUDGET = 300.0

_START = time.perf_counter()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE:
        return
    elapsed = time.perf_counter() - _START
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE:
        terminalreporter.write_line(line)
    status = "PASS" if elapsed <= SUITE_BUDGET else "FAIL"
    terminalreporter.write_line(
        f"[{status}] criterion 9: suite runtime -- {elapsed:.1f} s (budget {SUITE_BUDGET:.0f} s)"
    )
