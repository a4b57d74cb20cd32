from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from helpers import ACCEPTANCE_LINES
from tmatch.temporal import TemporalGraph, TimeEdge

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=lambda k: int(k)):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])


@pytest.fixture
def worked() -> TemporalGraph:
    """V = {a, b, c} = {0, 1, 2}, Delta = 2: ({a,b},1), ({b,c},2), ({a,b},4)."""
    return TemporalGraph.from_time_edges(
        3, 4, [TimeEdge(1, 0, 1), TimeEdge(2, 1, 2), TimeEdge(4, 0, 1)]
    )


@pytest.fixture
def one_pair() -> TemporalGraph:
    """Two vertices, one edge present at steps 1, 5 and 6 of an 8-step window."""
    return TemporalGraph.from_time_edges(
        2, 8, [TimeEdge(1, 0, 1), TimeEdge(5, 0, 1), TimeEdge(6, 0, 1)]
    )
