from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from heckext import backend as _backend

settings.register_profile(
    "heckext", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("heckext")


@pytest.fixture(params=_backend.AVAILABLE)
def backend(request):
    """Run the test once per available kernel backend."""
    prev = _backend.use(request.param)
    yield request.param
    _backend.use(prev)


# ---------------------------------------------------------------------------
# acceptance summary: one PASS/FAIL line per criterion


_RESULTS: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): acceptance criterion number and title")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    n, text = marker.args
    failed = report.failed
    if report.when == "call" or failed:
        prev = _RESULTS.get(n, ("PASS", text))[0]
        _RESULTS[n] = ("FAIL" if failed or prev == "FAIL" else "PASS", text)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_RESULTS):
        status, text = _RESULTS[n]
        terminalreporter.write_line(f"criterion {n:2d}: {status}  {text}")
