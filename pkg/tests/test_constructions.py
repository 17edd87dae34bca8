import itertools
import math

import numpy as np
import pytest
from sympy import primitive_root

from rexlab.constructions import (
    AbelianGroup,
    bipartite_sum,
    brown,
    brown_alpha,
    cayley_sum,
    disjoint_union,
    er_polarity,
    h_graph,
    h_star,
    norm_graph,
)
from rexlab.graph import complete_graph
from rexlab.numtheory import DifferenceSet, bose_chowla, quotient_set
from rexlab.verify import check_regular, max_codegree

PT_PAIRS = [(p, t) for p in (3, 5, 7, 11, 13) for t in range(1, p) if (p - 1) % t == 0]


def test_group_indexing_round_trip():
    G = AbelianGroup((3, 4, 2))
    assert G.order == 24
    for i, g in enumerate(G.elements()):
        assert G.index(g) == i
    assert G.add((2, 3, 1), (2, 2, 1)) == (1, 1, 0)
    with pytest.raises(ValueError):
        G.normalize((1, 2))


@pytest.mark.parametrize("orders,S", [((7,), [1, 3]), ((4, 4), [(1, 0), (0, 1), (2, 2)]), ((3, 3, 3), [(1, 1, 1), (0, 2, 1)])])
def test_cayley_sum_loop_inclusive_degree_is_size_of_s(orders, S):
    group = AbelianGroup(orders)
    G = cayley_sum(group, S)
    assert check_regular(G) == len(S)
    elems = group.elements()
    Sn = {group.normalize(s) for s in S}
    for u, v in itertools.combinations(range(group.order), 2):
        assert G.has_edge(u, v) == (group.add(elems[u], elems[v]) in Sn)
    assert G.loops == {i for i, x in enumerate(elems) if group.add(x, x) in Sn}
    assert cayley_sum(group, S, keep_loops=False).absolute_points == G.loops


def test_bipartite_sum_examples():
    G = bipartite_sum(30, bose_chowla(3).elements, bose_chowla(3))
    assert (G.n, check_regular(G), max_codegree(G, 2)) == (60, 3, 1)
    assert G.part_sizes == (30, 30)
    M = bipartite_sum(10, [1], DifferenceSet((1,), 5, 1))
    assert (M.n, M.edge_count, check_regular(M)) == (20, 10, 1)
    Q = quotient_set(13, 2)
    B = bipartite_sum(168, Q.elements[:12], Q)
    assert (B.n, check_regular(B)) == (336, 12)
    assert max_codegree(B, 2) <= 4


def test_bipartite_sum_errors():
    A = bose_chowla(3)
    with pytest.raises(ValueError):
        bipartite_sum(15, A.elements, A)  # modulus 8 > 7
    with pytest.raises(ValueError):
        bipartite_sum(30, [2], A)


@pytest.mark.parametrize("p,t,hist", [(5, 2, {3: 4, 4: 6}), (5, 4, {3: 4, 4: 1}), (13, 2, {11: 12, 12: 66})])
def test_h_graph_examples(p, t, hist, brute_codegree):
    H = h_graph(p, t)
    assert H.n == p * (p - 1) // t
    assert H.degree_histogram() == hist
    if H.n <= 20:
        assert brute_codegree(H, 2) <= t


@pytest.mark.parametrize("p,t", PT_PAIRS)
def test_h_graph_absolute_points_closed_form(p, t):
    H = h_graph(p, t)
    r = (p - 1) // t
    theta = primitive_root(p)
    half = pow(2, -1, p)
    mu = pow(theta, r, p)
    closed = {(x, half * pow(theta, 2 * x, p) * pow(mu, j, p) % p) for x in range(r) for j in range(t)}
    scanned = {H.labels[v] for v in range(H.n) if H.degree(v) == p - 2}
    assert scanned == closed
    assert {H.labels[v] for v in H.absolute_points} == closed
    assert len(closed) == p - 1


@pytest.mark.parametrize("p,t", PT_PAIRS)
def test_h_graph_structure(p, t):
    H = h_graph(p, t)
    assert max_codegree(H, 2) <= t
    absolute = np.zeros(H.n, dtype=bool)
    absolute[list(H.absolute_points)] = True
    assert int((H.adjacency & absolute).sum(axis=1).max()) <= 2 * t


@pytest.mark.parametrize("p,t", [(5, 2), (5, 4), (13, 2), (7, 3), (11, 5)])
def test_h_star(p, t):
    H = h_star(p, t)
    assert H.n == p * (p - 1) // t + 1
    assert check_regular(H) == p - 1
    assert max_codegree(H, 2) <= 2 * t
    assert H.meta["apex"] == H.n - 1


def test_h_graph_rejects_bad_t():
    with pytest.raises(ValueError):
        h_graph(7, 4)


@pytest.mark.parametrize("p,alpha", [(3, 1), (5, 2), (7, 1), (11, 1), (13, 2)])
def test_brown_alpha(p, alpha):
    assert brown_alpha(p) == alpha
    # eta(alpha) = -eta(-1) by Euler's criterion
    eta = lambda a: 1 if pow(a, (p - 1) // 2, p) == 1 else -1
    assert eta(alpha) == -eta(p - 1)


@pytest.mark.parametrize("p", [3, 5])
def test_brown_graph(p, brute_codegree):
    B = brown(p)
    assert B.n == p**3 and check_regular(B) == p * p - p
    assert max_codegree(B, 3) <= 2
    if p == 3:
        assert brute_codegree(B, 3) == max_codegree(B, 3)


def test_brown_errors():
    with pytest.raises(ValueError):
        brown(2)
    with pytest.raises(ValueError):
        brown(17)


@pytest.mark.parametrize("p,s", [(3, 2), (5, 2), (7, 2), (3, 3), (11, 2), (13, 2)])
def test_norm_graph_counts(p, s):
    D = (p**s - 1) // (p - 1)
    N = norm_graph(p, s)
    assert len(N.absolute_points) == D
    assert N.degree_histogram() == {D - 1: D, D: p**s - D}
    assert all(N.degree(v) == D - 1 for v in N.absolute_points)
    Nl = norm_graph(p, s, with_loops=True)
    assert check_regular(Nl) == D and Nl.loop_count == D


@pytest.mark.parametrize("p,s", [(3, 2), (5, 2), (3, 3)])
def test_norm_graph_freeness(p, s):
    assert max_codegree(norm_graph(p, s), s) <= math.factorial(s)


def test_norm_graph_errors():
    with pytest.raises(ValueError):
        norm_graph(2, 3)
    with pytest.raises(ValueError):
        norm_graph(13, 3)  # 2197 > 2000


@pytest.mark.parametrize("q", [3, 5, 7, 11, 13])
def test_er_polarity(q):
    ER, R1, R2 = er_polarity(q)
    assert ER.n == q * q + q + 1
    assert len(ER.absolute_points) == q + 1
    assert max_codegree(ER, 2) <= 1
    assert R1.n == q * (q + 1) // 2 and check_regular(R1) == (q - 1) // 2
    assert R2.n == q * (q - 1) // 2 and check_regular(R2) == (q + 1) // 2
    assert max_codegree(R1, 2) <= 1 and max_codegree(R2, 2) <= 1


def test_disjoint_union():
    K = complete_graph(3)
    assert disjoint_union([K]) is K
    U = disjoint_union([K, K])
    assert (U.n, U.edge_count, len(U.components())) == (6, 6, 2)
    B = disjoint_union([brown(3), brown(3)])
    assert B.n == 54 and check_regular(B) == 6 and B.part_sizes == (27, 27)
    N = disjoint_union([norm_graph(3, 2), norm_graph(3, 2)])
    assert len(N.absolute_points) == 8 and max(N.absolute_points) >= 9


def test_builds_are_reproducible():
    assert np.array_equal(norm_graph(3, 3).adjacency, norm_graph(3, 3).adjacency)
    assert h_graph(13, 3).labels == h_graph(13, 3).labels
