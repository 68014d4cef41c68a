import functools

import pytest

from steklov_parallels.catenoid import find_symmetric_balanced
from steklov_parallels.optimizer import maximize_full

_acceptance: dict[str, tuple[str, str]] = {}


@functools.lru_cache(maxsize=None)
def optimum(N: int):
    """maximize_full(N) with default seeds, shared across test modules."""
    return maximize_full(N)


@functools.lru_cache(maxsize=None)
def balanced(N: int):
    return find_symmetric_balanced(N)


@pytest.fixture(scope="session")
def optimum_of():
    return optimum


@pytest.fixture(scope="session")
def balanced_of():
    return balanced


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        outcome = "PASS" if report.outcome == "passed" else report.outcome.upper()
        detail = ""
        if report.outcome == "failed":
            msg = str(report.longrepr.reprcrash.message) if hasattr(report.longrepr, "reprcrash") else ""
            detail = msg.splitlines()[0] if msg else ""
        _acceptance[name] = ("FAIL" if outcome == "FAILED" else outcome, detail)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance):
        status, detail = _acceptance[name]
        line = f"{status:<5} {name}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
