import sys
from pathlib import Path

import pytest

from semimv.polytope import PointSet

JOBS = Path(__file__).resolve().parent.parent / "jobs"

W_POINTS = [(0, 0), (1, 0), (2, 0), (0, 1), (0, 2)]
# two copies of {0, 2e1, 2e2, e1+e2, e3} stacked along e4
VOFF_ZERO_POINTS = [p + (z,) for p in [(0, 0, 0), (2, 0, 0), (0, 2, 0), (1, 1, 0), (0, 0, 1)] for z in (0, 1)]
SQUARE = [(0, 0), (1, 0), (0, 1), (1, 1)]


@pytest.fixture
def W():
    return PointSet.of(W_POINTS)


@pytest.fixture
def voff_zero_set():
    return PointSet.of(VOFF_ZERO_POINTS)


@pytest.fixture
def square():
    return PointSet.of(SQUARE)


@pytest.fixture
def jobs():
    return JOBS


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.report_lines():
        terminalreporter.write_line(line)
