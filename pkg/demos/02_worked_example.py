"""Node strength and prune decisions on the worked-example neighborhood.

``v2`` touches edges of trussness 3, 3, 3, 2, 2 (mean 2.6) and ``v10``
touches two trussness-2 edges (mean 2.0). With delta = 2.5 the weaker
endpoint of (v2, v10) falls short, so that edge stays. Both ends of
(v1, v3) sit only on trussness-3 edges, so it goes.

    python3 demos/02_worked_example.py
"""

from trussprune import SparsifyConfig, node_strength, tgs_sparsify, truss_decompose
from trussprune.synthetic import worked_example_graph

g = worked_example_graph()
t = truss_decompose(g)
for name in ("v1", "v3", "v2", "v10"):
    print(f"strength({name}) = {node_strength(g, t, g.index_of(name)):.3f}")

# eta = 2 puts every edge on the candidate list, including (v2, v10)
out, report = tgs_sparsify(g, SparsifyConfig(eta=2, delta=2.5))
ids = g.ids.tolist()
for d in report.examined:
    if {ids[d.edge.u], ids[d.edge.v]} in ({"v1", "v3"}, {"v2", "v10"}):
        print(f"({ids[d.edge.u]}, {ids[d.edge.v]}): k={d.trussness} "
              f"strengths=({d.strength_u:.2f}, {d.strength_v:.2f}) -> {d.decision}")
print(f"pruned {report.pruned_count} of {report.input_edge_count} edges")
