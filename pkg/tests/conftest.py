import functools

import pytest
from hypothesis import settings, HealthCheck

from nefcone import scenarios

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE = {}


@functools.lru_cache(maxsize=None)
def builtin_report(name):
    """Each builtin runs once per session; golden and acceptance tests share it."""
    return scenarios.run_builtin(name)


@pytest.fixture
def acceptance():
    def record(number, title, passed, elapsed, limit, detail=""):
        ok = passed and elapsed < limit
        ACCEPTANCE[number] = (title, ok, elapsed, limit, detail)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, ok, elapsed, limit, detail = ACCEPTANCE[n]
        status = "PASS" if ok else "FAIL"
        extra = f"; {detail}" if detail else ""
        terminalreporter.write_line(
            f"criterion {n:2d} {status}: {title} ({elapsed:.2f}s, limit {limit}s{extra})")
