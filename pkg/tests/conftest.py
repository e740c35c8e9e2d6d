import time

import pytest

SUITE_BUDGET_S = 60.0
_results: dict = {}
_start = [0.0]


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")
    _start[0] = time.perf_counter()


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    key = (number, title)
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        ok = rep.passed and _results.get(key, True)
        _results[key] = ok


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    elapsed = time.perf_counter() - _start[0]
    if _results:
        terminalreporter.section("acceptance criteria")
        for (number, title), ok in sorted(_results.items()):
            terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}")
    terminalreporter.write_line(f"suite wall time {elapsed:.1f}s (budget {SUITE_BUDGET_S:.0f}s)")


def pytest_sessionfinish(session, exitstatus):
    elapsed = time.perf_counter() - _start[0]
    # the full-suite budget only applies to complete runs
    if session.testscollected > 200 and elapsed > SUITE_BUDGET_S and exitstatus == 0:
        session.exitstatus = 1
