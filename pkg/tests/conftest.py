import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

# label -> (description, passed)
ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label, description): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    label, description = marker.args
    if report.when == "call" or (report.when == "setup" and not report.passed):
        ACCEPTANCE[label] = (description, report.passed)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(ACCEPTANCE, key=lambda s: int(s.rsplit("-", 1)[1])):
        description, passed = ACCEPTANCE[label]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}  {description}")
