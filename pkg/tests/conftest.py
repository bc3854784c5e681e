import sys
from pathlib import Path

import pytest

HERE = Path(__file__).parent
FIXTURES = HERE / "fixtures"
TINY = FIXTURES / "tiny"

sys.path.insert(0, str(HERE))


@pytest.fixture
def tiny_dir() -> Path:
    return TINY


@pytest.fixture
def tiny_files() -> list[Path]:
    return sorted(TINY.glob("*.m2"))


# one summary line per acceptance criterion, printed after the run
_CRITERIA: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion this test checks")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    entry = _CRITERIA.setdefault(number, {"title": title, "failed": False, "skipped": 0, "ran": 0})
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        if rep.skipped:
            entry["skipped"] += 1
        else:
            entry["ran"] += 1
            entry["failed"] |= rep.failed
    elif rep.failed:
        entry["failed"] = True


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        e = _CRITERIA[number]
        status = "FAIL" if e["failed"] else "PASS" if e["ran"] else "SKIP"
        note = f" ({e['skipped']} optional check(s) skipped)" if e["skipped"] and e["ran"] else ""
        terminalreporter.write_line(f"[{status}] criterion {number}: {e['title']}{note}")
