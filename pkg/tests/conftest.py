from __future__ import annotations

import pytest

from pddlbench.assets import gold_domain, gold_domain_text, gold_problem, gold_problem_text

# Acceptance tests register one line each; printed at the end of the run.
_ACCEPTANCE_LINES: list[str] = []


def record_acceptance(line: str) -> None:
    _ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def bw_domain():
    return gold_domain("blocksworld")


@pytest.fixture(scope="session")
def bw_problem():
    return gold_problem("blocksworld")


@pytest.fixture(scope="session")
def bw_domain_text():
    return gold_domain_text("blocksworld")


@pytest.fixture(scope="session")
def bw_problem_text():
    return gold_problem_text("blocksworld")
