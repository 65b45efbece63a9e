import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_support, brute_triangles, random_graph
from trussprune.graph import EdgeKey, EmptyGraphError, build_graph, common_neighbors, support, triangle_count


def complete(n, start=0):
    return build_graph(list(itertools.combinations(range(start, start + n), 2)))


def test_build_drops_duplicates_and_self_loops():
    g = build_graph([(1, 2), (2, 1), (3, 3), (2, 3)])
    assert g.edge_list() == [(1, 2), (2, 3)]
    assert g.load_report.duplicates == 1
    assert g.load_report.self_loops == 1
    assert g.load_report.raw_pairs == 4


def test_declared_isolated_nodes():
    g = build_graph([], nodes=[1, 2, 3])
    assert g.num_nodes == 3 and g.num_edges == 0
    assert g.ids.tolist() == [1, 2, 3]


def test_empty_graph_error_only_when_required():
    assert build_graph([]).num_nodes == 0
    with pytest.raises(EmptyGraphError):
        build_graph([], require_nonempty=True)


def test_k5():
    g = complete(5, start=1)
    assert (g.num_nodes, g.num_edges) == (5, 10)


def test_string_and_mixed_ids():
    g = build_graph([("b", "a"), ("c", "b")])
    assert g.ids.tolist() == ["a", "b", "c"]
    assert g.edge_list() == [("a", "b"), ("b", "c")]
    mixed = build_graph([(1, "x"), ("x", 2)])
    assert sorted(map(str, mixed.edge_list())) == sorted(map(str, [(1, "x"), ("x", 2)]))


def test_edge_key_is_canonical():
    assert EdgeKey.of(5, 2) == EdgeKey.of(2, 5) == (2, 5)


def test_csr_invariants():
    g = random_graph(np.random.default_rng(3), 30, 0.3)
    deg = g.degrees()
    assert deg.sum() == 2 * g.num_edges
    for u in range(g.num_nodes):
        nb = g.neighbors(u)
        assert np.all(np.diff(nb) > 0)
        assert u not in nb
        for w in nb:
            assert u in g.neighbors(w)


def test_support_small_cases():
    tri = build_graph([(0, 1), (1, 2), (0, 2)])
    assert set(support(tri).values()) == {1}
    p4 = build_graph([(0, 1), (1, 2), (2, 3)])
    assert set(support(p4).values()) == {0}
    k5 = complete(5)
    assert support(k5) == brute_support(5, k5.edge_list(False))
    assert set(support(k5).values()) == {3}


def test_common_neighbors():
    k4 = complete(4)
    assert common_neighbors(k4, 0, 3) == [1, 2]
    p4 = build_graph([(0, 1), (1, 2), (2, 3)])
    assert common_neighbors(p4, 1, 2) == []
    k5 = complete(5, start=1).without_edges([(0, 1)])  # internal (0, 1) is external (1, 2)
    assert k5.ids[common_neighbors(k5, 0, 1)].tolist() == [3, 4, 5]
    with pytest.raises(KeyError):
        common_neighbors(k5, 0, 99)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 50), st.floats(0.05, 0.7), st.integers(0, 2**32 - 1))
def test_support_matches_triple_enumeration(n, p, seed):
    g = random_graph(np.random.default_rng(seed), n, p)
    edges = g.edge_list(False)
    assert support(g) == brute_support(n, edges)
    assert sum(support(g).values()) == 3 * brute_triangles(n, edges) == 3 * triangle_count(g)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 15), st.integers(0, 15)), max_size=60))
def test_build_is_idempotent(pairs):
    g = build_graph(pairs)
    again = build_graph(g.edge_list(), nodes=g.ids.tolist())
    assert again.same_as(g)
    assert build_graph(pairs[::-1]).same_as(g)
