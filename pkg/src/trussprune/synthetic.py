"""Small synthetic graphs with known truss structure."""

from __future__ import annotations

import itertools

import numpy as np

from .graph import Graph, build_graph


def random_graph(n: int, p: float, seed=None) -> Graph:
    """Erdos-Renyi G(n, p) on nodes ``0..n-1``."""
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(len(iu)) < p
    return build_graph(np.stack([iu[keep], ju[keep]], axis=1), nodes=np.arange(n))


def random_graph_m(n: int, m: int, seed=None) -> Graph:
    """Uniform random simple graph with exactly ``m`` edges, G(n, m)."""
    rng = np.random.default_rng(seed)
    if m > n * (n - 1) // 2:
        raise ValueError("too many edges for n nodes")
    codes = np.zeros(0, dtype=np.int64)
    while len(codes) < m:
        draw = rng.integers(0, n, size=(int((m - len(codes)) * 1.1) + 16, 2))
        draw = draw[draw[:, 0] != draw[:, 1]]
        lo, hi = draw.min(axis=1), draw.max(axis=1)
        codes = np.unique(np.concatenate([codes, lo * n + hi]))
    codes = rng.permutation(codes)[:m]
    return build_graph(np.stack([codes // n, codes % n], axis=1), nodes=np.arange(n))


def circulant_edges(nodes, offsets):
    s = len(nodes)
    return [(nodes[i], nodes[(i + o) % s]) for i in range(s) for o in offsets]


def nested_truss_graph(core: int = 8, shell: int = 30, links: int = 2, seed=None) -> tuple[Graph, np.ndarray]:
    """A ``core``-clique (trussness ``core``) wired into a ring-like 4-truss shell.

    The shell is the circulant graph with offsets 1, 2, 3, where every edge
    has trussness 4. Each core node gets ``links`` edges to random shell
    nodes. Returns the graph and the internal indices of the core nodes.
    """
    if core < 4 or shell < 8:
        raise ValueError("need core >= 4 and shell >= 8")
    rng = np.random.default_rng(seed)
    core_nodes = list(range(core))
    shell_nodes = list(range(core, core + shell))
    edges = list(itertools.combinations(core_nodes, 2))
    edges += circulant_edges(shell_nodes, (1, 2, 3))
    for c in core_nodes:
        for s in rng.choice(shell_nodes, size=links, replace=False).tolist():
            edges.append((c, s))
    g = build_graph(edges, nodes=range(core + shell))
    return g, np.arange(core)


def worked_example_graph() -> Graph:
    """Two neighborhoods with the node strengths of the classic worked example.

    ``v2`` has five incident edges of trussness {3, 3, 3, 2, 2}, so its mean
    strength is 2.6; ``v10`` has two incident edges of trussness 2, so 2.0.
    ``v1`` and ``v3`` only touch trussness-3 edges, giving 3.0 each. The
    helper nodes around ``v2`` carry pendant edges so that none of the
    trussness-3 edges next to ``v2`` reaches a strength of 2.5.
    """
    e = [
        # v1/v3 block: K4 minus (v4, v5); every edge trussness 3
        ("v1", "v3"), ("v1", "v4"), ("v1", "v5"), ("v3", "v4"), ("v3", "v5"),
        # v2 block: triangles v2-a-b and v2-a-c
        ("v2", "a"), ("v2", "b"), ("v2", "c"), ("a", "b"), ("a", "c"),
        ("v2", "d"), ("v2", "v10"), ("v10", "x"),
    ]
    for hub, count in (("a", 4), ("b", 3), ("c", 3)):
        e += [(hub, f"{hub}{i}") for i in range(count)]
    return build_graph(e)
