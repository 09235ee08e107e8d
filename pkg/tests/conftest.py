import re

_acceptance: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        match = re.search(r"test_criterion_(\d+)_(\w+)", report.nodeid)
        if match:
            key = f"criterion {match.group(1)} ({match.group(2).replace('_', ' ')})"
            _acceptance[key] = "PASS" if report.outcome == "passed" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_acceptance, key=lambda k: int(k.split()[1])):
        terminalreporter.write_line(f"{_acceptance[key]}  {key}")
