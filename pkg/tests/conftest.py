from __future__ import annotations

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

# criterion number -> (title, list of (nodeid, outcome))
_CRITERIA: dict[int, tuple[str, list[tuple[str, str]]]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        number, title = marker.args
        state = "xfail" if hasattr(rep, "wasxfail") else rep.outcome
        _CRITERIA.setdefault(number, (title, []))[1].append((item.name, state))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, results = _CRITERIA[number]
        passed = all(state == "passed" for _, state in results)
        line = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {title}"
        failing = [f"{name} ({state})" for name, state in results if state != "passed"]
        if failing:
            line += "  [" + ", ".join(failing) + "]"
        terminalreporter.write_line(line)
