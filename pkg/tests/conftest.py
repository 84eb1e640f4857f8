from pathlib import Path

import pytest

import rubikshape

DATA = Path(rubikshape.__file__).parent / "data"

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number")


@pytest.fixture
def data_dir():
    return DATA


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when not in ("setup", "call"):
        return
    n, title = mark.args
    key = (n, title, item.name)
    if rep.failed:
        _criteria[key] = "FAIL"
    elif rep.when == "call":
        _criteria[key] = "PASS"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for (n, title, name), verdict in sorted(_criteria.items()):
        terminalreporter.write_line(f"criterion {n:2d} {verdict}: {title} [{name}]")
