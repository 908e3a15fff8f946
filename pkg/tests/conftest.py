from collections import OrderedDict

import pytest

_CRITERIA: "OrderedDict[int, dict]" = OrderedDict()


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is None:
            continue
        number, title = mark.args
        entry = _CRITERIA.setdefault(number, {"title": title, "outcomes": {}})
        entry["outcomes"][item.nodeid] = None


def pytest_runtest_logreport(report):
    for entry in _CRITERIA.values():
        if report.nodeid in entry["outcomes"]:
            failed = report.failed or (report.when == "call" and report.skipped)
            if failed:
                entry["outcomes"][report.nodeid] = "failed"
            elif report.when == "call" and entry["outcomes"][report.nodeid] is None:
                entry["outcomes"][report.nodeid] = "passed"


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        entry = _CRITERIA[number]
        results = entry["outcomes"].values()
        if any(r is None for r in results) and not any(r == "failed" for r in results):
            status = "NOT RUN"
        else:
            status = "PASS" if all(r == "passed" for r in results) else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status}  {entry['title']} "
                                    f"({len(entry['outcomes'])} checks)")


@pytest.fixture
def rng():
    import numpy as np
    return np.random.default_rng(12345)
