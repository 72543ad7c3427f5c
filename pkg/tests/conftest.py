"""Shared pytest wiring: echo acceptance summary lines after the run."""

import sys


def pytest_terminal_summary(terminalreporter):
    for name in ("test_acceptance", "tests.test_acceptance"):
        mod = sys.modules.get(name)
        if mod is not None:
            for line in getattr(mod, "SUMMARY_LINES", ()):
                terminalreporter.write_line(line)
            break
