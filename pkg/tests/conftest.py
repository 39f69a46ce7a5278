import networkx as nx
import pytest

from gambitnet.graph import BINARY, Network

CRITERIA = []


def record_criterion(label, passed, detail=""):
    CRITERIA.append((label, bool(passed), detail))


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in CRITERIA:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}  {detail}")


def to_network(G):
    return Network([str(v) for v in G.nodes], [(str(u), str(v), 1.0) for u, v in G.edges], kind=BINARY)


@pytest.fixture
def diamond_tail():
    # edges AB, BC, CD, DB: a triangle B-C-D with pendant A
    return Network("ABCD", [("A", "B"), ("B", "C"), ("C", "D"), ("D", "B")], kind=BINARY)


@pytest.fixture
def star3():
    return to_network(nx.star_graph(3))
