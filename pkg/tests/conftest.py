import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

_outcomes = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or report.failed:
        prev = _outcomes.get(name)
        if prev is None or prev == "passed":
            _outcomes[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for name, title in mod.CRITERIA.items():
        outcome = _outcomes.get(name)
        if outcome is None:
            continue
        status = "PASS" if outcome == "passed" else "FAIL"
        detail = mod.DETAILS.get(name, "")
        terminalreporter.write_line(f"{status}  {title}" + (f"  ({detail})" if detail else ""))
