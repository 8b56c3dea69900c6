"""Collects the acceptance criteria outcomes and prints them at the end of the run."""

import re

ACCEPTANCE = {}
CRITERIA = 10


def record(number, title, passed, detail=""):
    ACCEPTANCE[number] = (title, passed, detail)


def pytest_runtest_logreport(report):
    # a criterion that raised before calling record() still gets a FAIL line
    match = re.search(r"test_criterion_(\d+)_(\w+)", report.nodeid)
    if match and report.when == "call" and report.failed:
        number = int(match.group(1))
        if number not in ACCEPTANCE:
            ACCEPTANCE[number] = (match.group(2).replace("_", " "), False, "raised an exception")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in range(1, CRITERIA + 1):
        if number not in ACCEPTANCE:
            terminalreporter.write_line(f"criterion {number:2d} NOT RUN")
            continue
        title, passed, detail = ACCEPTANCE[number]
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d} {status}  {title}  {detail}".rstrip())
