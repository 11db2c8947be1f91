from pathlib import Path

import pytest

from opfcliques.graph import SparsityGraph
from opfcliques.network import parse_matpower
from opfcliques.patterns import build_complex_pattern, realify_graph

DATA = Path(__file__).parent / "data"

# 1_Re, 1_Im, 2_Re, 2_Im, 3_Re, 3_Im
R1, I1, R2, I2, R3, I3 = range(6)

LMBM3_REAL_EDGES = {
    (R1, R2), (R1, I2), (I1, R2), (I1, I2),
    (R1, R3), (R1, I3), (I1, R3), (I1, I3),
    (R2, R3), (R2, I3), (I2, R3), (I2, I3),
}


@pytest.fixture
def lmbm3_path():
    return DATA / "lmbm3.m"


@pytest.fixture
def lmbm3(lmbm3_path):
    return parse_matpower(lmbm3_path.read_text(), name="lmbm3")


@pytest.fixture
def lmbm3_complex(lmbm3):
    return build_complex_pattern(lmbm3)


@pytest.fixture
def lmbm3_real(lmbm3_complex):
    return realify_graph(lmbm3_complex)


@pytest.fixture
def lmbm3_hr(lmbm3_real):
    """The paper's minimal extension of the real pattern."""
    return lmbm3_real.with_edges([(R2, I2), (R3, I3)])


def cycle(n):
    return SparsityGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n):
    return SparsityGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete(n):
    return SparsityGraph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star(leaves):
    return SparsityGraph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def grid(rows, cols):
    idx = lambda r, c: r * cols + c  # noqa: E731
    edges = [(idx(r, c), idx(r, c + 1)) for r in range(rows) for c in range(cols - 1)]
    edges += [(idx(r, c), idx(r + 1, c)) for r in range(rows - 1) for c in range(cols)]
    return SparsityGraph.from_edges(rows * cols, edges)
