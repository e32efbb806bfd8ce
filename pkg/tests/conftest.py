from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from carlitz_tate import get_context

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

CRITERIA: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def ctx3():
    return get_context(3, 1)


@pytest.fixture
def ctx2():
    return get_context(2, 1)


@pytest.fixture
def ctx4():
    return get_context(2, 2)


@pytest.fixture(params=[(2, 1), (3, 1), (2, 2), (5, 1)], ids=["q2", "q3", "q4", "q5"])
def ctx(request):
    return get_context(*request.param)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(CRITERIA):
        ok, text = CRITERIA[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {text}")
