import os
import sys
from datetime import datetime

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

ORIGIN = datetime(2021, 4, 6, 21, 49)


@pytest.fixture
def origin():
    return ORIGIN


@pytest.fixture
def event_cfg():
    from quakepulse.corpus import EventConfig

    return EventConfig("test", ORIGIN, ("earthquake", "地震"), window_hours=48)


_acceptance = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: exit criterion of the package")


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and (report.when == "call" or report.outcome != "passed"):
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
