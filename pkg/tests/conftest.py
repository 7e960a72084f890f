import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from chipfire import build  # noqa: E402
from report import LOG  # noqa: E402


@pytest.fixture
def G2():
    return build(edges=[("a", "b", 2), ("b", "a", 1)])


@pytest.fixture
def C3():
    return build(edges=[("a", "b", 1), ("b", "c", 1), ("c", "a", 1)])


@pytest.fixture
def D2():
    return build(edges=[("a", "b", 1), ("b", "a", 1)])


def pytest_terminal_summary(terminalreporter):
    if LOG:
        terminalreporter.section("acceptance criteria")
        for line in LOG:
            terminalreporter.write_line(line)
