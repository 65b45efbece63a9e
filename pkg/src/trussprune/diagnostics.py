"""Oversmoothing diagnostics on linear feature propagation.

Propagation repeatedly applies the augmented, degree-normalized adjacency

    P = D^(r-1) (A + I) D^(-r),   D = diag(deg + 1),

with no weights and no nonlinearity. On a connected component with ``m``
edges and ``n`` nodes, ``P^K`` tends to the rank-one matrix with entries
``(d_i + 1)^r (d_j + 1)^(1-r) / (2m + n)``, so every node ends up with a
degree-scaled copy of the same blended feature vector.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components
from scipy.spatial.distance import pdist, squareform

from .graph import Graph
from .truss import TrussMap, truss_decompose

log = logging.getLogger(__name__)

#: above this many nodes the propagation matrix is kept sparse
DENSE_LIMIT = 5000


@dataclass(frozen=True)
class PropagationConfig:
    layers: int = 2
    coeff: float = 0.5
    self_loops: bool = True

    def __post_init__(self):
        if self.layers < 0:
            raise ValueError(f"layers must be >= 0, got {self.layers}")
        if not 0.0 <= self.coeff <= 1.0:
            raise ValueError(f"coeff must lie in [0, 1], got {self.coeff}")


def _features(g: Graph, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    if x.ndim != 2 or x.shape[0] != g.num_nodes:
        raise ValueError(f"feature matrix has shape {x.shape}, graph has {g.num_nodes} nodes")
    if not np.all(np.isfinite(x)):
        raise ValueError("feature matrix has non-finite entries")
    return x


def propagation_matrix(g: Graph, coeff: float = 0.5, self_loops: bool = True):
    """``D^(r-1) (A + I) D^(-r)`` as a dense array or, for large graphs, CSR."""
    n = g.num_nodes
    a = sp.csr_matrix((np.ones(len(g.indices)), g.indices, g.indptr), shape=(n, n))
    if self_loops:
        a = a + sp.identity(n, format="csr")
    deg = np.asarray(a.sum(axis=1)).ravel()
    with np.errstate(divide="ignore"):
        left = np.where(deg > 0, deg ** (coeff - 1.0), 0.0)
        right = np.where(deg > 0, deg ** (-coeff), 0.0)
    p = sp.diags(left) @ a @ sp.diags(right)
    return p.toarray() if n <= DENSE_LIMIT else p.tocsr()


def propagate(g: Graph, x, cfg: PropagationConfig = PropagationConfig()) -> np.ndarray:
    """Features after ``cfg.layers`` rounds of linear neighborhood averaging."""
    h = _features(g, x).copy()
    if cfg.layers == 0:
        return h
    p = propagation_matrix(g, cfg.coeff, cfg.self_loops)
    for _ in range(cfg.layers):
        h = p @ h
    return h


def steady_state(g: Graph, x, coeff: float = 0.5) -> np.ndarray:
    """Closed-form limit of :func:`propagate` as the layer count grows.

    Applied per connected component; an isolated node keeps its features.
    """
    x = _features(g, x)
    n = g.num_nodes
    out = np.zeros_like(x)
    if n == 0:
        return out
    a = sp.csr_matrix((np.ones(len(g.indices)), g.indices, g.indptr), shape=(n, n))
    ncomp, comp = connected_components(a, directed=False)
    d1 = g.degrees().astype(float) + 1.0
    for c in range(ncomp):
        idx = np.flatnonzero(comp == c)
        vol = d1[idx].sum()  # 2m + n for this component
        left = d1[idx] ** coeff
        right = d1[idx] ** (1.0 - coeff)
        out[idx] = np.outer(left, right @ x[idx]) / vol
    return out


def esm(x) -> np.ndarray:
    """Pairwise Euclidean distance matrix between feature rows."""
    x = np.asarray(x, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    if len(x) < 2:
        return np.zeros((len(x), len(x)))
    return squareform(pdist(x))


def anrd(x, region: Sequence[int] | None = None) -> float:
    """Mean Euclidean distance over all unordered pairs of rows in ``region``."""
    x = np.asarray(x, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    rows = x if region is None else x[np.asarray(list(region), dtype=np.int64)]
    if len(rows) < 2:
        raise ValueError("region needs at least two nodes")
    return float(pdist(rows).mean())


@dataclass(frozen=True)
class ProfileRow:
    k: int
    layers: int
    nodes: int
    anrd: float


def truss_regions(g: Graph, t: TrussMap, k: int) -> np.ndarray:
    """Internal indices of the nodes of the k-truss subgraph."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    sub = t.edges_array()[t.values_array() >= k]
    return np.unique(sub)


def truss_region_anrd_profile(
    g: Graph,
    x,
    k_values: Sequence[int],
    layer_range: Sequence[int],
    cfg: PropagationConfig = PropagationConfig(),
    t: TrussMap | None = None,
) -> list[ProfileRow]:
    """ANRD of every k-truss node set after each layer count in ``layer_range``.

    Regions with fewer than two nodes are left out of the table.
    """
    x = _features(g, x)
    t = t if t is not None else truss_decompose(g)
    regions = {}
    for k in k_values:
        nodes = truss_regions(g, t, k)
        if len(nodes) < 2:
            log.info("k=%d truss has %d node(s); omitted", k, len(nodes))
            continue
        regions[k] = nodes
    rows = []
    p = None
    h, done = x.copy(), 0
    for layers in sorted(set(layer_range)):
        if layers < 0:
            raise ValueError(f"layer counts must be >= 0, got {layers}")
        if layers > done:
            p = p if p is not None else propagation_matrix(g, cfg.coeff, cfg.self_loops)
            for _ in range(layers - done):
                h = p @ h
            done = layers
        for k, nodes in regions.items():
            rows.append(ProfileRow(k, layers, len(nodes), anrd(h, nodes)))
    rows.sort(key=lambda r: (r.k, r.layers))
    return rows


def degree_onehot_features(g: Graph, max_degree: int | None = None) -> np.ndarray:
    """One-hot degree encoding; degrees above ``max_degree`` share the last column."""
    deg = g.degrees()
    cap = int(deg.max(initial=0)) if max_degree is None else int(max_degree)
    x = np.zeros((g.num_nodes, cap + 1))
    x[np.arange(g.num_nodes), np.minimum(deg, cap)] = 1.0
    return x


def label_onehot_features(labels: Sequence[int], num_labels: int | None = None) -> np.ndarray:
    labels = np.asarray(labels, dtype=np.int64)
    lo = int(labels.min()) if len(labels) else 0
    width = int(labels.max() - lo + 1) if num_labels is None and len(labels) else int(num_labels or 0)
    x = np.zeros((len(labels), width))
    x[np.arange(len(labels)), labels - lo] = 1.0
    return x


def random_features(g: Graph, dim: int = 16, seed: int | None = 0) -> np.ndarray:
    return np.random.default_rng(seed).standard_normal((g.num_nodes, dim))
