import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("exact", deadline=None, max_examples=25,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("exact")

FIXTURES = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "fixtures")


@pytest.fixture
def fixture_path():
    return lambda name: os.path.join(FIXTURES, name)


# -- acceptance summary: one line per criterion ------------------------------------

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title, seconds): end-to-end acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None or (rep.when != "call" and rep.passed):
        return
    number, title, seconds = mark.args
    entry = _criteria.setdefault(number, {"title": title, "limit": seconds, "passed": True, "duration": 0.0})
    entry["duration"] += rep.duration
    if rep.failed:
        entry["passed"] = False
        entry["reason"] = str(rep.longrepr.reprcrash.message if hasattr(rep.longrepr, "reprcrash")
                              else rep.longrepr).splitlines()[0]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        e = _criteria[number]
        line = (f"criterion {number:2d}: {'PASS' if e['passed'] else 'FAIL'}  "
                f"{e['duration']:6.2f} s (limit {e['limit']} s)  {e['title']}")
        if not e["passed"]:
            line += f"  -- {e['reason']}"
        terminalreporter.write_line(line)
