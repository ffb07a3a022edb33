import csv
from pathlib import Path

import pytest

from orbitforge.plmap import make_family_map, make_theorem1_map

GOLDEN = Path(__file__).parent / "golden"


def load_table1():
    """The orbit table as printed, {m: (phi1..phi5, psi)}."""
    with open(GOLDEN / "table1.csv", newline="") as fh:
        rows = list(csv.reader(fh))
    return {int(r[0]): tuple(int(v) for v in r[1:]) for r in rows[1:]}


@pytest.fixture(scope="session")
def table1():
    return load_table1()


@pytest.fixture(scope="session")
def thm1():
    return make_theorem1_map()


@pytest.fixture(scope="session")
def fam():
    return {n: make_family_map(n) for n in range(2, 7)}


_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if report.when == "call" or (report.when == "setup" and report.failed):
        number, title = mark.args
        _criteria[number] = (title, report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, passed = _criteria[number]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  criterion {number:>2}: {title}")
