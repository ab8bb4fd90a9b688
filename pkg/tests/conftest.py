"""Shared fixtures and the per-criterion acceptance summary."""

import os

from hypothesis import settings

settings.register_profile("ci", max_examples=60, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))

ACCEPTANCE_RESULTS: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = "test_acceptance.py::test_criterion_"
    if marker not in report.nodeid:
        return
    tail = report.nodeid.split(marker, 1)[1]
    number = int(tail.split("_", 1)[0])
    status = "PASS" if report.passed else "FAIL"
    ACCEPTANCE_RESULTS[number] = (status, tail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        status, name = ACCEPTANCE_RESULTS[number]
        terminalreporter.write_line(f"criterion {number:2d}: {status}  ({name})")
    passed = sum(1 for s, _ in ACCEPTANCE_RESULTS.values() if s == "PASS")
    terminalreporter.write_line(f"{passed}/{len(ACCEPTANCE_RESULTS)} criteria passed")
