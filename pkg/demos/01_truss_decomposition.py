"""Truss decomposition and single-edge maintenance on a small graph.

Two 5-cliques share a node, and a short path hangs off one of them. Every
clique edge sits in three triangles, so it has trussness 5; the path edges
sit in no triangle and stay at 2.

    python3 demos/01_truss_decomposition.py
"""

import itertools

from trussprune import build_graph, k_truss_subgraph, truss_decompose, update_trussness

left = list(itertools.combinations(range(5), 2))
right = list(itertools.combinations(range(4, 9), 2))
tail = [(8, 9), (9, 10)]
g = build_graph(left + right + tail)
t = truss_decompose(g)

print(g)
print("trussness histogram:", {k: list(t.values()).count(k) for k in sorted(set(t.values()))})
print("max trussness:", t.max_k)

sub = k_truss_subgraph(g, t, 5)
print(f"5-truss: {sub.num_nodes} nodes, {sub.num_edges} edges")

# Removing one clique edge leaves that clique as K5 minus an edge. Its
# remaining edges drop to 4; the other clique is untouched.
t2 = update_trussness(g, t, (0, 1))
moved = sorted(e for e in t2 if t2[e] != t[e])
print(f"after removing (0, 1): {len(moved)} edges changed, all now {t2[moved[0]]}")
assert t2 == truss_decompose(g.without_edges([(0, 1)]))
