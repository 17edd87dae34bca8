import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rexlab.graph import EdgeListError, Graph, cycle_graph, petersen_graph, read_edgelist, write_edgelist


def test_degrees_count_loops_once():
    G = Graph.from_edges(3, [(0, 1), (1, 2)], loops=[1])
    assert G.degrees.tolist() == [1, 3, 1]
    assert G.adjacency_matrix()[1, 1] == 1 and G.adjacency_matrix(loops=False)[1, 1] == 0
    assert np.array_equal(G.laplacian(), G.without_loops().laplacian())


def test_adjacency_is_read_only():
    G = cycle_graph(5)
    with pytest.raises(ValueError):
        G.adjacency[0, 1] = False


def test_edge_list_format():
    G = Graph.from_edges(4, [(2, 3), (0, 1)], loops=[3])
    assert G.to_edgelist() == "n 4 loops 1\nL 3\n0 1\n2 3\n"


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 15), st.data())
def test_edge_list_round_trip(n, data):
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = data.draw(st.sets(st.sampled_from(pairs))) if pairs else set()
    loops = data.draw(st.sets(st.integers(0, n - 1), max_size=n))
    G = Graph.from_edges(n, edges, loops=loops)
    H = Graph.from_edgelist(G.to_edgelist())
    assert np.array_equal(G.adjacency, H.adjacency) and G.loops == H.loops


@pytest.mark.parametrize("text", [
    "",
    "n 3\n0 1\n",
    "n x loops 0\n",
    "n 3 loops 1\n0 1\n",
    "n 3 loops 0\n0 3\n",
    "n 3 loops 0\n1 0\n",
    "n 3 loops 0\n0 1\n0 1\n",
    "n 3 loops 0\n0 one\n",
])
def test_malformed_edge_lists(text):
    with pytest.raises(EdgeListError):
        Graph.from_edgelist(text)


def test_file_round_trip(tmp_path):
    P = petersen_graph()
    write_edgelist(P, tmp_path / "p.edges")
    Q = read_edgelist(tmp_path / "p.edges")
    assert Q.edge_count == 15 and np.array_equal(P.adjacency, Q.adjacency)


def test_components_and_subgraphs():
    G = Graph.from_edges(5, [(0, 1), (3, 4)])
    assert G.components() == [[0, 1], [2], [3, 4]]
    assert not G.is_connected()
    S = G.induced_subgraph([0, 1, 3])
    assert S.edge_count == 1 and S.n == 3
