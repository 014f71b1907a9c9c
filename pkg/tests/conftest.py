import re
from collections import OrderedDict

from hypothesis import HealthCheck, settings

settings.register_profile(
    "csl", derandomize=True, deadline=None, suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("csl")

_CRITERION = re.compile(r"test_criterion_(\d+)_")
_outcomes: "OrderedDict[int, bool]" = OrderedDict()


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m or "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or report.outcome != "passed":
        n = int(m.group(1))
        _outcomes[n] = _outcomes.get(n, True) and report.outcome == "passed"


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_outcomes):
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if _outcomes[n] else 'FAIL'}")
