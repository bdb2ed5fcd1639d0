import time

import pytest

_ACCEPTANCE: dict[str, tuple[str, str]] = {}
_START = time.monotonic()
SUITE_BUDGET_SECONDS = 300.0


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        status = "PASS" if report.outcome == "passed" else "FAIL"
        _ACCEPTANCE[number] = (status, title)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE, key=int):
        status, title = _ACCEPTANCE[number]
        tr.write_line(f"criterion {number:>2}: {status}  {title}")
    elapsed = time.monotonic() - _START
    verdict = "PASS" if elapsed < SUITE_BUDGET_SECONDS else "FAIL"
    tr.write_line(f"suite runtime: {verdict}  {elapsed:.1f} s (budget {SUITE_BUDGET_SECONDS:.0f} s)")
