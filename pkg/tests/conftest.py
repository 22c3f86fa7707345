"""Collect acceptance outcomes and print one line per criterion."""

from collections import OrderedDict

import pytest

_RESULTS: "OrderedDict[int, dict]" = OrderedDict()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not (rep.when == "setup" and rep.failed):
        return
    number, title = mark.args
    entry = _RESULTS.setdefault(number, {"title": title, "failed": [], "total": 0})
    entry["total"] += 1
    if rep.failed:
        entry["failed"].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        e = _RESULTS[number]
        status = "FAIL" if e["failed"] else "PASS"
        line = f"criterion {number:>2} {status}  {e['title']}"
        if e["failed"]:
            line += f"  (failing: {', '.join(e['failed'])})"
        terminalreporter.write_line(line)
