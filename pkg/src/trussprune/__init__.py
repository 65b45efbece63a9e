"""k-truss decomposition, truss-based edge sparsification, and linear
oversmoothing diagnostics for undirected graphs."""

from .graph import EdgeKey, EmptyGraphError, Graph, LoadReport, build_graph, common_neighbors, support
from .truss import TrussMap, k_truss_subgraph, truss_decompose, update_trussness
from .sparsify import (
    SparsifyConfig,
    SparsifyReport,
    edge_strength,
    high_truss_edges,
    node_strength,
    sweep,
    tgs_sparsify,
)
from .diagnostics import PropagationConfig, anrd, esm, propagate, steady_state, truss_region_anrd_profile
from .dataset_io import (
    DatasetBundle,
    FormatError,
    batch_sparsify,
    read_edge_list,
    read_tu_dataset,
    write_tu_dataset,
    write_weighted_edge_list,
)

__version__ = "0.1.0"
