import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from legrid import alexander as alx  # noqa: E402
from legrid import io as gio  # noqa: E402


@pytest.fixture(scope="session")
def k1_unoriented():
    return gio.k1_unoriented()


@pytest.fixture(scope="session")
def k1():
    return gio.k1_diagram()


@pytest.fixture(scope="session")
def k1_delta():
    return gio.k1_alexander()


@pytest.fixture(scope="session")
def k1_computed_delta(k1):
    return alx.alexander_poly(k1)


# --- acceptance criteria summary ---------------------------------------------------

_CRITERIA: dict[int, tuple[str, str, float]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    num, title = mark.args
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        _CRITERIA[num] = ("PASS" if rep.passed else "FAIL", title, rep.duration)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        status, title, secs = _CRITERIA[num]
        terminalreporter.write_line(f"{status} criterion {num:2d}: {title} ({secs:.1f} s)")
