"""Shared pytest configuration.

The acceptance module records one verdict line per criterion; they are
repeated in the terminal summary so they are visible without ``-s``.
"""

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
