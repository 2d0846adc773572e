import csv
from collections import OrderedDict
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"

_CRITERIA = OrderedDict()
_NODE_CRITERION = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")
    config.addinivalue_line("markers", "slow: takes more than a few seconds")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            key = str(mark.args[0])
            _CRITERIA.setdefault(key, {"title": mark.args[1], "outcomes": []})
            _NODE_CRITERION[item.nodeid] = key


def pytest_runtest_logreport(report):
    key = _NODE_CRITERION.get(report.nodeid)
    if key is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _CRITERIA[key]["outcomes"].append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key, entry in _CRITERIA.items():
        outcomes = entry["outcomes"]
        if not outcomes:
            status = "NOT RUN"
        elif all(o == "passed" for o in outcomes):
            status = "PASS"
        else:
            status = "FAIL"
        terminalreporter.write_line(f"criterion {key:<4} {status:<7} {entry['title']} ({len(outcomes)} checks)")


def read_csv(name):
    with open(FIXTURES / name, newline="") as fh:
        return list(csv.DictReader(fh))


@pytest.fixture(scope="session")
def golden():
    return read_csv("specfun_golden.csv")


@pytest.fixture(scope="session")
def bessel_zeros():
    table = {}
    for row in read_csv("bessel_zeros.csv"):
        table.setdefault(int(row["m"]), []).append(float(row["zero"]))
    return table


@pytest.fixture(scope="session")
def model_roots():
    table = {}
    for row in read_csv("model_roots.csv"):
        table.setdefault(row["case"], []).append(float(row["root"]))
    return table
