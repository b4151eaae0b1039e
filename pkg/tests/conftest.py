import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

from holehat.graph import build_graph  # noqa: E402

settings.register_profile("default", deadline=None)
settings.load_profile("default")


def cycle(n):
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n):
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


@pytest.fixture
def house():
    # square 0-1-2-3 with roof vertex 4 on the edge 0-1
    return build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 4)])


@pytest.fixture
def c5():
    return cycle(5)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
