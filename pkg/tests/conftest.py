import random

import pytest

from coarsetw import generators
from coarsetw.graph import Graph

# criterion id -> (passed, detail); filled by test_acceptance
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[cid]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {cid}: {detail}")


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def p3():
    return generators.path(3)


@pytest.fixture
def p5():
    return generators.path(5)


@pytest.fixture
def c6():
    return generators.cycle(6)


def two_components() -> Graph:
    return Graph.from_edges(5, [(0, 1), (1, 2), (3, 4)])
