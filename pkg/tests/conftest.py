import os

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_results: dict[int, tuple[str, str, str]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    mark = report.user_properties and dict(report.user_properties).get("criterion")
    if not mark:
        return
    number, title = mark
    if report.passed:
        status = "PASS"
    elif report.skipped:
        status = "SKIP"
    else:
        status = "FAIL"
    detail = dict(report.user_properties).get("detail", "")
    _results[number] = (status, title, detail)


@pytest.hookimpl(tryfirst=True)
def pytest_runtest_setup(item):
    m = item.get_closest_marker("criterion")
    if m is not None:
        item.user_properties.append(("criterion", (m.args[0], m.args[1])))


@pytest.fixture
def detail(request):
    """Attach a one-line measurement to the acceptance summary."""
    def record(text: str):
        request.node.user_properties.append(("detail", text))
    return record


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_results):
        status, title, detail = _results[n]
        line = f"criterion {n:>2} {status}  {title}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
