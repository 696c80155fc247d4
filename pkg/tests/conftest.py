import pytest

_criteria = {}


def pytest_addoption(parser):
    parser.addoption("--heavy", action="store_true", default=False, help="run E6/E7/E8 checks")


def pytest_configure(config):
    config.addinivalue_line("markers", "heavy: E-series checks, enabled with --heavy")
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_collection_modifyitems(config, items):
    skip = pytest.mark.skip(reason="needs --heavy")
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark:
            item.user_properties.append(("criterion", mark.args[0]))
        if "heavy" in item.keywords and not config.getoption("--heavy"):
            item.add_marker(skip)


def pytest_runtest_logreport(report):
    for key, value in report.user_properties:
        if key != "criterion":
            continue
        seen = _criteria.setdefault(value, {"passed": 0, "failed": 0, "skipped": 0})
        if report.failed:
            seen["failed"] += 1
        elif report.skipped:
            seen["skipped"] += 1
        elif report.when == "call":
            seen["passed"] += 1


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        c = _criteria[n]
        if c["failed"]:
            verdict = "FAIL"
        elif c["passed"]:
            verdict = "PASS"
        else:
            verdict = "SKIP"
        line = "criterion %2d: %s  (%d passed, %d failed" % (n, verdict, c["passed"], c["failed"])
        if c["skipped"]:
            line += ", %d skipped" % c["skipped"]
        terminalreporter.write_line(line + ")")
