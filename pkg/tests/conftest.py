from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

TITLES = {
    1: "gentle validation",
    2: "global dimension",
    3: "finitistic dimension",
    4: "projective and injective dimensions",
    5: "hb.dim values",
    6: "bound theorem harness",
    7: "band rule",
    8: "oracle equivalence",
    9: "discrepancy adjudication",
    10: "quasi-tilted decision",
    11: "duality and locality",
}

_outcomes: dict[int, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_logreport(report):
    marker = report.keywords.get("criterion")
    if marker is None or "test_acceptance" not in report.nodeid:
        return
    number = int(report.nodeid.split("test_criterion_")[1][:2])
    if report.failed:
        _outcomes[number] = "FAIL"
    elif report.when == "call":
        _outcomes.setdefault(number, "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(TITLES):
        status = _outcomes.get(number, "NOT RUN")
        terminalreporter.write_line(f"criterion {number:>2} {status:<7} {TITLES[number]}")
