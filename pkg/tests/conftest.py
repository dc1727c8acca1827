"""Shared test plumbing.

The acceptance tests (tests/test_acceptance.py) record one human-readable
line per criterion; the terminal-summary hook reprints them at the end of
the run so the pass/fail ledger is visible regardless of capture settings.
"""

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

ACCEPTANCE_LINES = []


def record_criterion(number, ok, elapsed, budget, description):
    """Record and print one acceptance line, then enforce it."""
    status = "PASS" if ok else "FAIL"
    line = "criterion %d: %s (%.2fs)  %s" % (number, status, elapsed, description)
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line
    assert elapsed < budget, "criterion %d took %.2fs (budget %ss)" % (
        number,
        elapsed,
        budget,
    )


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def session_cache(tmp_path_factory):
    """One disk cache shared by the heavyweight tests of a session (cold at
    session start, so timings stay honest)."""
    return str(tmp_path_factory.mktemp("gram-cache"))
