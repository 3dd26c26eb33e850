from __future__ import annotations

from functools import lru_cache

import pytest
from hypothesis import HealthCheck, settings

from charsheaves.rootdata import parse_root_datum

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

RANK_LE_2 = ("GL(1)", "A1 sc", "A1 ad", "A2 sc", "A2 ad", "B2 sc", "B2 ad", "G2 sc", "GL(2)")


@lru_cache(maxsize=None)
def datum(spec: str):
    return parse_root_datum(spec)


@pytest.fixture(params=RANK_LE_2)
def small_rd(request):
    return datum(request.param)


def pytest_terminal_summary(terminalreporter):
    from .test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
