"""Shared pytest plumbing: the acceptance-criteria result banner.

Acceptance tests record one line each through the ``acceptance_log``
fixture; the terminal-summary hook replays them after output capture has
ended, so the pass/fail lines are visible in ordinary ``pytest -v`` runs.
"""
import pytest

_acceptance_lines = []


@pytest.fixture
def acceptance_log():
    def record(line: str):
        _acceptance_lines.append(line)
    return record


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_acceptance_lines):
            terminalreporter.write_line(line)
