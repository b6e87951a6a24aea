import random
from pathlib import Path

import pytest

from amcp.graph import Partition, build_graph

FIXTURES = Path(__file__).parent / "fixtures"

THREE_EDGES = [("A", "B", 1), ("B", "A", 1), ("C", "A", 1), ("A", "C", 1)]


@pytest.fixture
def three():
    """The three-module example: A<->B, A<->C, previous = {A,B}{C}."""
    graph = build_graph(THREE_EDGES)
    return graph, Partition((0, 0, 1))


def set_partitions(n):
    """Every canonical partition of n modules (restricted growth strings)."""
    def rec(prefix, k):
        if len(prefix) == n:
            yield Partition(tuple(prefix))
            return
        for label in range(k + 1):
            yield from rec(prefix + [label], max(k, label + 1))

    return list(rec([], 0))


def random_partition(rng: random.Random, n: int, kmax: int = None) -> Partition:
    kmax = kmax or n
    return Partition(tuple(rng.randrange(kmax) for _ in range(n)))


def random_graph(rng: random.Random, n: int, density: float = 0.3, max_weight: int = 1):
    names = [f"v{i:02d}" for i in range(n)]
    edges = [
        (names[i], names[j], rng.randint(1, max_weight))
        for i in range(n)
        for j in range(n)
        if i != j and rng.random() < density
    ]
    return build_graph(edges, names)


# one PASS/FAIL line per acceptance criterion at the end of the run
_acceptance = []


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
