import re

import pytest

from parkequity.datasets import tiny1
from parkequity.instance import AccessConfig

_ACCEPTANCE = re.compile(r"test_acceptance\.py::test_acceptance_(\d+)_(\w+)")
_results: dict[int, tuple[str, str, str]] = {}


@pytest.fixture
def inst():
    return tiny1()


@pytest.fixture
def cfg():
    return AccessConfig()


def pytest_runtest_logreport(report):
    match = _ACCEPTANCE.search(report.nodeid)
    if not match:
        return
    number, name = int(match.group(1)), match.group(2).replace("_", " ")
    if report.when == "call" or report.outcome != "passed":
        if report.skipped:
            reason = report.longrepr[2] if isinstance(report.longrepr, tuple) else str(report.longrepr)
            reason = reason.removeprefix("Skipped: ").removeprefix("SKIPPED: ")
            outcome = "SKIPPED"
        else:
            outcome = "PASS" if report.passed else "FAIL"
            reason = ""
        if outcome != "PASS" or number not in _results:
            _results[number] = (outcome, name, reason)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        outcome, name, reason = _results[number]
        line = f"criterion {number}: {outcome:<7} {name}"
        if reason:
            line += f" ({reason})"
        terminalreporter.write_line(line)
