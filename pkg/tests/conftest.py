"""Collects the outcome of each acceptance criterion and prints one line per criterion."""

import pytest

_RESULTS: dict[int, tuple[str, bool]] = {}
_DETAILS: dict[int, str] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and report.failed):
        _, ok = _RESULTS.get(number, (title, True))
        _RESULTS[number] = (title, ok and report.passed)
        for key, value in item.user_properties:
            if key == "detail":
                _DETAILS[number] = value


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        title, ok = _RESULTS[number]
        detail = f" [{_DETAILS[number]}]" if number in _DETAILS else ""
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {title}{detail}")
