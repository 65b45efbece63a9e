"""How a dense core smooths faster than the rest of the graph, and how
pruning inside the core slows that down.

A 10-clique is wired into a sparser ring-shaped shell. Random features are
pushed through K rounds of linear propagation and the mean pairwise
distance (ANRD) is tracked for the whole graph and for the 7-truss.

    python3 demos/03_oversmoothing_profile.py
"""

from trussprune import (
    PropagationConfig, SparsifyConfig, tgs_sparsify, truss_decompose, truss_region_anrd_profile,
)
from trussprune.diagnostics import random_features
from trussprune.synthetic import nested_truss_graph

g, core = nested_truss_graph(core=10, shell=40, links=2, seed=3)
x = random_features(g, dim=16, seed=3)
layers = [0, 1, 2, 4, 8]
cfg = PropagationConfig(layers=max(layers))
t0 = truss_decompose(g)


def table(graph, title):
    print(title)
    print(f"{'K':>3} {'whole (k=2)':>12} {'core (k=7)':>11}")
    # regions come from the original trussness so both runs compare the same nodes
    rows = truss_region_anrd_profile(graph, x, [2, 7], layers, cfg, t=t0)
    by = {(r.k, r.layers): r.anrd for r in rows}
    for k in layers:
        print(f"{k:>3} {by[(2, k)]:>12.4f} {by[(7, k)]:>11.4f}")


table(g, "before sparsification")
pruned, report = tgs_sparsify(g, SparsifyConfig(eta=3, delta=3))
print(f"\npruned {report.pruned_count} edges ({report.pruning_rate:.1%})\n")
table(pruned, "after sparsification, same node sets")
