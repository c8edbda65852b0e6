"""Collects acceptance outcomes and prints one PASS/FAIL line per criterion."""

import pytest

_OUTCOMES: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion checked by a test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    failed = report.failed
    if report.when == "call" or failed:
        previous = _OUTCOMES.get(number, ("PASS", title))[0]
        _OUTCOMES[number] = ("FAIL" if failed or previous == "FAIL" else "PASS", title)


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_OUTCOMES):
        status, title = _OUTCOMES[number]
        terminalreporter.write_line(f"criterion {number:2d}: {status}  {title}")
