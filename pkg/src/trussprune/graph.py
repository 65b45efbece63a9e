"""Undirected simple graphs in compressed sparse row form.

Nodes carry dense 0-based internal indices; the external identifiers the
graph was built from are kept in ``Graph.ids`` so that file writers can
map back. Every neighbor list is sorted ascending, which the triangle
kernels rely on.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, NamedTuple, Sequence

import numpy as np


class EmptyGraphError(ValueError):
    """Raised when a non-empty graph was required but none could be built."""


class EdgeKey(NamedTuple):
    u: int
    v: int

    @classmethod
    def of(cls, a: int, b: int) -> "EdgeKey":
        """Canonical key with ``u < v``."""
        a, b = int(a), int(b)
        return cls(a, b) if a < b else cls(b, a)


@dataclass(frozen=True)
class LoadReport:
    """What ``build_graph`` threw away while normalizing its input."""

    raw_pairs: int
    duplicates: int
    self_loops: int


def _freeze(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


class Graph:
    """Immutable undirected simple graph.

    Attributes
    ----------
    ids : np.ndarray
        External identifier of each internal node index.
    indptr, indices : np.ndarray
        CSR adjacency; ``indices[indptr[i]:indptr[i+1]]`` is the sorted
        neighbor list of node ``i``.
    slot_edge : np.ndarray
        Edge id for every CSR slot, aligned with ``indices``.
    edges : np.ndarray
        ``(m, 2)`` array of internal endpoint pairs with ``u < v``, sorted
        lexicographically. Row ``i`` is edge id ``i``.
    """

    __slots__ = ("ids", "indptr", "indices", "slot_edge", "edges", "load_report", "_index")

    def __init__(self, ids, edges: np.ndarray, load_report: LoadReport | None = None):
        # edges must already be canonical: u < v, unique, lexicographically sorted
        n = len(ids)
        edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        m = len(edges)
        src = np.concatenate([edges[:, 0], edges[:, 1]])
        dst = np.concatenate([edges[:, 1], edges[:, 0]])
        eid = np.concatenate([np.arange(m, dtype=np.int64)] * 2)
        order = np.lexsort((dst, src))
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        self.ids = _freeze(np.asarray(ids))
        self.edges = _freeze(edges)
        self.indptr = _freeze(indptr)
        self.indices = _freeze(dst[order])
        self.slot_edge = _freeze(eid[order])
        self.load_report = load_report or LoadReport(m, 0, 0)
        self._index: dict | None = None

    # -- size and lookup -------------------------------------------------

    @property
    def num_nodes(self) -> int:
        return len(self.ids)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def __repr__(self) -> str:
        return f"Graph(nodes={self.num_nodes}, edges={self.num_edges})"

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def degree(self, u: int) -> int:
        self._check(u)
        return int(self.indptr[u + 1] - self.indptr[u])

    def neighbors(self, u: int) -> np.ndarray:
        self._check(u)
        return self.indices[self.indptr[u] : self.indptr[u + 1]]

    def index_of(self, external_id: Any) -> int:
        """Internal index of an external node id."""
        if self._index is None:
            self._index = {k: i for i, k in enumerate(self.ids.tolist())}
        try:
            return self._index[external_id]
        except KeyError:
            raise KeyError(f"unknown node id {external_id!r}") from None

    def edge_id(self, u: int, v: int) -> int:
        """Row of ``(u, v)`` in ``edges``, or -1 when absent."""
        lo, hi = self.indptr[u], self.indptr[u + 1]
        p = lo + np.searchsorted(self.indices[lo:hi], v)
        if p < hi and self.indices[p] == v:
            return int(self.slot_edge[p])
        return -1

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and self.edge_id(u, v) >= 0

    def edge_keys(self) -> list[EdgeKey]:
        return [EdgeKey(u, v) for u, v in self.edges.tolist()]

    def edge_list(self, external: bool = True) -> list[tuple]:
        """Edges as pairs, in external ids by default."""
        if not external:
            return [tuple(e) for e in self.edges.tolist()]
        ids = self.ids.tolist()
        return [(ids[u], ids[v]) for u, v in self.edges.tolist()]

    def _check(self, u: int) -> None:
        if not 0 <= u < self.num_nodes:
            raise KeyError(f"unknown node index {u}")

    # -- copy-and-edit ---------------------------------------------------

    def keep_edges(self, mask: np.ndarray) -> "Graph":
        """Graph on the same node set with only the edges where ``mask`` holds."""
        return Graph(self.ids, self.edges[np.asarray(mask, dtype=bool)])

    def without_edges(self, keys: Iterable[Sequence[int]]) -> "Graph":
        mask = np.ones(self.num_edges, dtype=bool)
        for a, b in keys:
            e = self.edge_id(*EdgeKey.of(a, b))
            if e < 0:
                raise KeyError(f"edge {(a, b)} not in graph")
            mask[e] = False
        return self.keep_edges(mask)

    def edge_subgraph(self, mask: np.ndarray) -> "Graph":
        """Graph spanned by the selected edges; nodes left isolated are dropped."""
        kept = self.edges[np.asarray(mask, dtype=bool)]
        nodes = np.unique(kept)
        remap = np.full(self.num_nodes, -1, dtype=np.int64)
        remap[nodes] = np.arange(len(nodes))
        return Graph(self.ids[nodes], remap[kept])

    def same_as(self, other: "Graph") -> bool:
        return (
            self.ids.tolist() == other.ids.tolist()
            and self.edges.shape == other.edges.shape
            and bool(np.array_equal(self.edges, other.edges))
        )


def _factorize(values: list) -> tuple[list, list[int]]:
    ints = all(isinstance(x, (int, np.integer)) and not isinstance(x, bool) for x in values)
    if values and (ints or all(isinstance(x, str) for x in values)):
        uniq, inv = np.unique(np.asarray(values), return_inverse=True)
        return uniq.tolist(), inv.ravel().tolist()
    index: dict = {}
    codes = [index.setdefault(x, len(index)) for x in values]
    return list(index), codes


def build_graph(
    edge_pairs: Iterable[Sequence[Any]] | np.ndarray,
    nodes: Iterable[Any] | None = None,
    *,
    require_nonempty: bool = False,
) -> Graph:
    """Build a simple undirected graph from raw pairs.

    Duplicate pairs (in either orientation) and self-loops are dropped and
    counted in ``Graph.load_report``. Internal indices follow the sorted
    order of the external ids when they are all integers or all strings,
    first appearance otherwise.

    Parameters
    ----------
    edge_pairs
        Iterable of ``(a, b)`` pairs or an ``(m, 2)`` integer array.
    nodes
        Extra node ids to include even if they have no edges.
    require_nonempty
        Raise :class:`EmptyGraphError` if the result has no nodes.
    """
    declared = list(nodes) if nodes is not None else []
    if isinstance(edge_pairs, np.ndarray) and edge_pairs.dtype.kind in "iu":
        pairs = edge_pairs.reshape(-1, 2).astype(np.int64)
        all_ids = np.concatenate([np.asarray(declared, dtype=np.int64), pairs.ravel()])
        uniq, inv = np.unique(all_ids, return_inverse=True)
        ids = uniq
        flat = inv.ravel()[len(declared) :]
    else:
        plist = [tuple(p) for p in edge_pairs]
        for p in plist:
            if len(p) != 2:
                raise ValueError(f"edge must be a pair, got {p!r}")
        id_list, codes = _factorize(declared + [x for p in plist for x in p])
        if not id_list:
            ids = np.zeros(0, dtype=np.int64)
        elif len({type(x) for x in id_list}) == 1:
            ids = np.asarray(id_list)
        else:
            ids = np.empty(len(id_list), dtype=object)
            ids[:] = id_list
        flat = np.asarray(codes[len(declared) :], dtype=np.int64)

    n = len(ids)
    if require_nonempty and n == 0:
        raise EmptyGraphError("no nodes and no valid edges")
    a, b = flat[0::2], flat[1::2]
    raw = len(a)
    loops = a == b
    a, b = a[~loops], b[~loops]
    lo, hi = np.minimum(a, b), np.maximum(a, b)
    codes = np.unique(lo * max(n, 1) + hi)
    edges = np.stack([codes // max(n, 1), codes % max(n, 1)], axis=1)
    report = LoadReport(raw, int(len(a) - len(codes)), int(loops.sum()))
    return Graph(ids, edges, report)


def common_neighbors(g: Graph, u: int, v: int) -> list[int]:
    """Sorted list of nodes adjacent to both ``u`` and ``v``.

    ``(u, v)`` does not need to be an edge.
    """
    return np.intersect1d(g.neighbors(u), g.neighbors(v), assume_unique=True).tolist()


def support(g: Graph) -> dict[EdgeKey, int]:
    """Number of triangles through each edge."""
    from ._kernels import edge_support

    sup = edge_support(g.indptr, g.indices, g.slot_edge, g.num_edges)
    return dict(zip(g.edge_keys(), sup.tolist()))


def triangle_count(g: Graph) -> int:
    from ._kernels import edge_support

    return int(edge_support(g.indptr, g.indices, g.slot_edge, g.num_edges).sum()) // 3
