import re

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)")
_titles = {}
_outcomes = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = _CRITERION.search(item.nodeid)
        if m:
            doc = (getattr(item.obj, "__doc__", None) or item.name).strip().splitlines()[0]
            _titles[int(m.group(1))] = doc


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    k = int(m.group(1))
    if report.when == "call" or report.failed:
        _outcomes[k] = _outcomes.get(k, True) and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_titles):
        if k not in _outcomes:
            continue
        status = "PASS" if _outcomes[k] else "FAIL"
        terminalreporter.write_line(f"{status} criterion {k:2d}: {_titles[k]}")
