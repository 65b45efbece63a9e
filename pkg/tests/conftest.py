import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_criteria: dict[str, str] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when != "call" and not (rep.when == "setup" and rep.failed):
        return
    label = f"{marker.args[0]:>2}. {marker.args[1]}"
    _criteria[label] = "PASS" if rep.passed else ("SKIP" if rep.skipped else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label, status in sorted(_criteria.items()):
        terminalreporter.write_line(f"[{status}] {label}")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")
