import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_truss, random_graph
from trussprune import truss as truss_mod
from trussprune.graph import EdgeKey, build_graph
from trussprune.truss import TrussMap, k_truss_subgraph, truss_decompose, update_trussness

K5 = list(itertools.combinations(range(5), 2))
BOWTIE = [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]


def test_tree_is_all_two():
    g = build_graph([(0, 1), (1, 2), (1, 3), (3, 4)])
    t = truss_decompose(g)
    assert set(t.values()) == {2}
    assert t.max_k == 2


def test_k5_and_bowtie_against_oracle():
    for edges, expected in ((K5, 5), (BOWTIE, 3)):
        g = build_graph(edges)
        t = truss_decompose(g)
        assert t.as_dict() == brute_truss(edges)
        assert set(t.values()) == {expected}


def test_empty_graph():
    t = truss_decompose(build_graph([], nodes=[0, 1]))
    assert len(t) == 0 and t.max_k == 0


def test_mapping_behaviour():
    g = build_graph(BOWTIE)
    t = truss_decompose(g)
    assert t[(2, 1)] == t[EdgeKey(1, 2)] == 3
    assert (0, 3) not in t
    with pytest.raises(KeyError):
        t[(0, 3)]
    assert list(t) == g.edge_keys()


def test_k_truss_subgraph():
    g = build_graph(K5)
    t = truss_decompose(g)
    assert k_truss_subgraph(g, t, 6).num_edges == 0
    assert k_truss_subgraph(g, t, 5).same_as(g)
    bow = build_graph(BOWTIE + [(3, 4)], nodes=[9])
    sub = k_truss_subgraph(bow, truss_decompose(bow), 3)
    assert sub.edge_list() == [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]
    two = k_truss_subgraph(bow, truss_decompose(bow), 2)
    assert two.num_edges == bow.num_edges and 9 not in two.ids.tolist()
    with pytest.raises(ValueError):
        k_truss_subgraph(g, t, 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(4, 30), st.floats(0.1, 0.7), st.integers(0, 2**32 - 1), st.integers(2, 9))
def test_k_truss_subgraph_is_a_k_truss(n, p, seed, k):
    g = random_graph(np.random.default_rng(seed), n, p)
    sub = k_truss_subgraph(g, truss_decompose(g), k)
    for u, v in sub.edge_list(False):
        shared = np.intersect1d(sub.neighbors(u), sub.neighbors(v))
        assert len(shared) >= k - 2


def test_hierarchy():
    g = random_graph(np.random.default_rng(11), 35, 0.4)
    t = truss_decompose(g)
    prev = None
    for k in range(2, t.max_k + 2):
        cur = set(k_truss_subgraph(g, t, k).edge_list())
        if prev is not None:
            assert cur <= prev
        prev = cur


def test_update_examples():
    tree = build_graph([(0, 1), (1, 2), (2, 3)])
    t = update_trussness(tree, truss_decompose(tree), (1, 2))
    assert t.as_dict() == {(0, 1): 2, (2, 3): 2}

    k5 = build_graph(K5)
    t = update_trussness(k5, truss_decompose(k5), (0, 1))
    assert t == truss_decompose(k5.without_edges([(0, 1)]))
    assert set(t.values()) == {4}

    bow = build_graph(BOWTIE)
    t = update_trussness(bow, truss_decompose(bow), (1, 2))
    assert t.as_dict() == dict.fromkeys([(0, 1), (0, 2), (1, 3), (2, 3)], 2)


def test_update_rejects_missing_edge():
    g = build_graph(BOWTIE)
    with pytest.raises(KeyError):
        update_trussness(g, truss_decompose(g), (0, 3))


def test_update_chains_and_compacts():
    rng = np.random.default_rng(5)
    g = random_graph(rng, 30, 0.5)
    t = truss_decompose(g)
    for _ in range(g.num_edges // 2):
        e = g.edge_keys()[int(rng.integers(g.num_edges))]
        t = update_trussness(g, t, e)
        g = g.without_edges([e])
        assert t == truss_decompose(g)


def test_update_falls_back_on_large_cascade(monkeypatch):
    monkeypatch.setattr(truss_mod, "CASCADE_LIMIT", 0.0)
    g = build_graph(K5)
    t = update_trussness(g, truss_decompose(g), (0, 1))
    assert t == truss_decompose(g.without_edges([(0, 1)]))


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 25), st.floats(0.1, 0.8), st.integers(0, 2**32 - 1))
def test_removal_never_raises_trussness(n, p, seed):
    rng = np.random.default_rng(seed)
    g = random_graph(rng, n, p)
    if g.num_edges == 0:
        return
    t = truss_decompose(g)
    e = g.edge_keys()[int(rng.integers(g.num_edges))]
    after = update_trussness(g, t, e)
    for key, k in after.items():
        assert k <= t[key] <= k + 1


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 25), st.floats(0.1, 0.8), st.integers(0, 2**32 - 1))
def test_order_independence(n, p, seed):
    rng = np.random.default_rng(seed)
    g = random_graph(rng, n, p)
    pairs = g.edge_list()
    shuffled = [pairs[i][:: (1 if rng.random() < 0.5 else -1)] for i in rng.permutation(len(pairs))]
    h = build_graph(shuffled, nodes=range(n))
    assert truss_decompose(h) == truss_decompose(g)
    # relabel nodes: trussness follows the edges
    perm = rng.permutation(n)
    r = build_graph([(int(perm[u]), int(perm[v])) for u, v in pairs], nodes=range(n))
    tr = truss_decompose(r)
    t = truss_decompose(g)
    assert all(tr[(int(perm[u]), int(perm[v]))] == t[(u, v)] for u, v in pairs)


def test_trussmap_compact_and_arrays():
    g = build_graph(K5)
    t = update_trussness(g, truss_decompose(g), (0, 1))
    c = t.compact()
    assert c == t and len(c) == 9
    assert isinstance(c, TrussMap)
    assert c.edges_array().tolist() == [list(k) for k in c]
