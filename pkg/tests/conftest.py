import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", deadline=None, max_examples=300)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_criteria = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    n, label = getattr(report, "criterion", (None, None))
    if n is not None:
        _criteria[n] = (label, report.passed)


def pytest_runtest_makereport(item, call):
    # attach the criterion marker so the log hook can see it
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return None
    from _pytest.runner import TestReport

    rep = TestReport.from_item_and_call(item, call)
    rep.criterion = tuple(mark.args)
    return rep


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        label, ok = _criteria[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {label}")
