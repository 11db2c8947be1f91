import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opfcliques.graph import SparsityGraph, verify_peo
from opfcliques.network import Branch, NetworkTopology, parse_edge_list
from opfcliques.ordering import chordal_extension, order_min_degree, symbolic_elimination
from opfcliques.patterns import (
    build_complex_pattern,
    complex_index,
    real_index,
    realify_clique,
    realify_extension,
    realify_graph,
)

from conftest import I1, I2, I3, LMBM3_REAL_EDGES, R1, R2, R3, complete
from oracles import random_edges


def test_lmbm3_complex_pattern_is_k3(lmbm3_complex):
    assert lmbm3_complex.node_count == 3
    assert lmbm3_complex.edges == complete(3).edges
    assert lmbm3_complex.labels == ("1", "2", "3")


def test_star_topology():
    g = build_complex_pattern(parse_edge_list("1 2\n1 3\n1 4"))
    assert g.edges == {(0, 1), (0, 2), (0, 3)}


def test_parallel_branches_collapse():
    t = NetworkTopology((1, 2), (Branch(1, 2), Branch(2, 1), Branch(1, 2)))
    assert build_complex_pattern(t).edges == {(0, 1)}


def test_out_of_service_branches_excluded():
    t = NetworkTopology((1, 2, 3), (Branch(1, 2), Branch(2, 3, in_service=False)))
    g = build_complex_pattern(t)
    assert g.node_count == 3 and g.edges == {(0, 1)}


def test_realify_k3_gives_paper_edge_set(lmbm3_complex):
    gr = realify_graph(lmbm3_complex)
    assert gr.node_count == 6
    assert gr.edges == LMBM3_REAL_EDGES
    assert gr.labels == ("1_Re", "1_Im", "2_Re", "2_Im", "3_Re", "3_Im")


def test_realify_single_edge():
    gr = realify_graph(SparsityGraph.from_edges(2, [(0, 1)]))
    assert gr.node_count == 4 and gr.edge_count == 4
    assert (0, 1) not in gr.edges and (2, 3) not in gr.edges


def test_realify_empty_graph():
    gr = realify_graph(SparsityGraph.from_edges(5))
    assert gr.node_count == 10 and gr.edge_count == 0


def test_realify_rejects_real_graph(lmbm3_real):
    with pytest.raises(ValueError):
        realify_graph(lmbm3_real)


@pytest.mark.parametrize(
    "clique, expected",
    [({0, 1, 2}, {R1, I1, R2, I2, R3, I3}), (set(), set()), ({5}, {10, 11})],
)
def test_realify_clique(clique, expected):
    assert realify_clique(clique) == expected


def test_index_maps():
    assert real_index(7) == 14 and real_index(7, imag=True) == 15
    assert complex_index(14) == complex_index(15) == 7


def test_realify_extension_k3(lmbm3_complex):
    hc = chordal_extension(lmbm3_complex)
    assert hc.fill_count == 0
    hreal = realify_extension(hc)
    assert hreal.graph.edges == complete(6).edges
    assert hreal.fill_edges == {(R1, I1), (R2, I2), (R3, I3)}
    assert verify_peo(hreal.graph, hreal.peo)


def test_realify_extension_single_edge():
    hc = symbolic_elimination(SparsityGraph.from_edges(2, [(0, 1)]), [0, 1])
    hreal = realify_extension(hc)
    assert hreal.graph.edges == complete(4).edges
    assert hreal.fill_count == 2


def test_realify_extension_edgeless():
    hc = symbolic_elimination(SparsityGraph.from_edges(3), [0, 1, 2])
    hreal = realify_extension(hc)
    assert hreal.graph.edge_count == 0 and hreal.fill_count == 0


@settings(max_examples=150, deadline=None)
@given(n=st.integers(0, 14), p=st.floats(0, 0.6), seed=st.integers(0, 2**32 - 1))
def test_realified_extension_is_chordal_and_fill_accounting(n, p, seed):
    rng = np.random.default_rng(seed)
    gc = SparsityGraph.from_edges(n, random_edges(rng, n, p))
    hc = symbolic_elimination(gc, [int(x) for x in rng.permutation(n)])
    hreal = realify_extension(hc)
    assert verify_peo(hreal.graph, hreal.peo)
    assert not (hreal.fill_edges & hreal.base.edges)
    non_isolated = sum(1 for v in range(n) if hc.graph.adjacency[v])
    assert hreal.fill_count == 4 * hc.fill_count + non_isolated


def test_complex_side_adds_more_fill_on_sparse_grid():
    from opfcliques.synthetic import transmission_like

    gc = build_complex_pattern(transmission_like(120, seed=3))
    gr = realify_graph(gc)
    complex_fill = realify_extension(symbolic_elimination(gc, order_min_degree(gc))).fill_count
    real_fill = symbolic_elimination(gr, order_min_degree(gr)).fill_count
    assert complex_fill >= real_fill
