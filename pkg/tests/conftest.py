from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

DATA = Path(__file__).resolve().parent.parent / "data"

_results: dict[str, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        _results.setdefault(str(mark.args[0]), []).append((item.name, rep.passed))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for key in sorted(_results, key=lambda k: (int("".join(c for c in k if c.isdigit())), k)):
        parts = _results[key]
        ok = all(passed for _, passed in parts)
        names = ", ".join(name for name, _ in parts)
        tr.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'} ({names})")


@pytest.fixture
def data_dir():
    return DATA
