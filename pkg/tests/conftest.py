import os
import sys

from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", max_examples=80, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ACCEPTANCE_RESULTS = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    for mark in ("criterion",):
        label = dict(report.user_properties).get(mark)
        if label:
            ACCEPTANCE_RESULTS[label] = (report.passed, dict(report.user_properties).get("seconds"))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(ACCEPTANCE_RESULTS, key=lambda s: int(s.split()[0])):
        ok, secs = ACCEPTANCE_RESULTS[label]
        timing = f" ({secs:.2f} s)" if secs is not None else ""
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {label}{timing}")
