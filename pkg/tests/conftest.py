import pytest

from topgraph.cardinal import OMEGA
from topgraph.factor import FactorMap
from topgraph.graph import TopGraph

ACCEPTANCE_LINES = []


def line_graph(n: int, prefix: str = "") -> TopGraph:
    """Directed line p0 -> p1 -> ... with n vertices."""
    vs = [f"{prefix}p{i}" for i in range(n)]
    return TopGraph.build(vs, [(f"{prefix}l{i}", vs[i], vs[i + 1], 1) for i in range(n - 1)])


@pytest.fixture
def ex1_F():
    return TopGraph.build(["v", "v'", "w"], [("e0", "v", "w", 1), ("E1", "v'", "w", OMEGA)])


@pytest.fixture
def ex1_m(ex1_F):
    return FactorMap(ex1_F, ex1_F, {"v": "v", "w": "w"}, {"e0": "e0"})


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
