"""Collects acceptance-criterion outcomes and prints one line per criterion."""

from __future__ import annotations

import pytest
from hypothesis import settings

settings.register_profile("exact", deadline=None, max_examples=60)
settings.load_profile("exact")

_criteria: dict[str, list[bool]] = {}
_item_criterion: dict[str, str] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark:
            _item_criterion[item.nodeid] = mark.args[0]


def pytest_runtest_logreport(report):
    name = _item_criterion.get(report.nodeid)
    if name is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _criteria.setdefault(name, []).append(report.outcome == "passed")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")

    def key(name):
        return int(name[1:]) if name[1:].isdigit() else 0

    for name in sorted(_criteria, key=key):
        results = _criteria[name]
        status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"{name}: {status} ({sum(results)}/{len(results)} checks)")


@pytest.fixture
def rng():
    import random
    return random.Random(20240611)
