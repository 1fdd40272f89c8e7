import pytest

# criterion number -> (title, passed so far)
_criteria: dict[int, tuple[str, bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    _, ok = _criteria.get(number, (title, True))
    if report.when == "call":
        ok = ok and report.passed
    else:
        ok = ok and not report.failed
    _criteria[number] = (title, ok)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok = _criteria[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}")
