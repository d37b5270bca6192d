import os
import sys
from collections import defaultdict

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

_outcomes = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        _outcomes[marker.args[0]].append((item.nodeid, rep.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_outcomes):
        results = _outcomes[n]
        failed = [nid for nid, o in results if o != "passed"]
        verdict = "PASS" if not failed else "FAIL"
        tr.write_line(f"criterion {n}: {verdict} ({len(results) - len(failed)}/{len(results)} checks)")
        for nid in failed:
            tr.write_line(f"    failing: {nid}")
