"""Edge trussness: full decomposition, k-truss extraction, and maintenance
after a single edge deletion.

The trussness of an edge is the largest ``k`` such that the edge belongs
to a subgraph in which every edge closes at least ``k - 2`` triangles.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping
from typing import Callable, Iterable, Iterator

import numpy as np

from ._kernels import edge_support, peel
from .graph import EdgeKey, Graph

log = logging.getLogger(__name__)

#: share of the edge set a local update may touch before falling back to
#: a full recomputation
CASCADE_LIMIT = 0.2


class TrussMap(Mapping):
    """Read-only mapping ``EdgeKey -> trussness``.

    Values live in an array aligned with a base edge array. Maps derived
    through :func:`update_trussness` share that base and carry only their
    own deletions and changed values, so deriving one costs time
    proportional to the change rather than to the graph.
    """

    __slots__ = ("_edges", "_codes", "_values", "_stride", "_changed", "_dropped", "_max_k")

    def __init__(self, edges: np.ndarray, values: np.ndarray, num_nodes: int,
                 changed: dict | None = None, dropped: frozenset = frozenset()):
        self._edges = edges
        self._values = values
        self._stride = max(int(num_nodes), 1)
        self._codes = edges[:, 0] * self._stride + edges[:, 1] if len(edges) else np.zeros(0, np.int64)
        self._changed = changed or {}
        self._dropped = dropped
        self._max_k: int | None = None

    @classmethod
    def _derive(cls, base: "TrussMap", changed: dict, dropped: frozenset) -> "TrussMap":
        t = cls.__new__(cls)
        t._edges, t._codes, t._values, t._stride = base._edges, base._codes, base._values, base._stride
        t._changed, t._dropped, t._max_k = changed, dropped, None
        return t

    def _slot(self, key) -> int:
        u, v = key
        if u > v:
            u, v = v, u
        if u < 0 or v >= self._stride:
            return -1
        c = u * self._stride + v
        i = int(np.searchsorted(self._codes, c))
        if i < len(self._codes) and self._codes[i] == c and i not in self._dropped:
            return i
        return -1

    def __getitem__(self, key) -> int:
        i = self._slot(key)
        if i < 0:
            raise KeyError(key)
        return self._changed.get(i, int(self._values[i])) if self._changed else int(self._values[i])

    def __contains__(self, key) -> bool:
        try:
            return self._slot(key) >= 0
        except (TypeError, ValueError):
            return False

    def __len__(self) -> int:
        return len(self._codes) - len(self._dropped)

    def __iter__(self) -> Iterator[EdgeKey]:
        for i, (u, v) in enumerate(self._edges.tolist()):
            if i not in self._dropped:
                yield EdgeKey(u, v)

    def __repr__(self) -> str:
        return f"TrussMap(edges={len(self)}, max_k={self.max_k})"

    def values_array(self) -> np.ndarray:
        """Trussness per surviving edge, in ascending key order."""
        vals = self._values.copy()
        for i, k in self._changed.items():
            vals[i] = k
        if self._dropped:
            keep = np.ones(len(vals), dtype=bool)
            keep[list(self._dropped)] = False
            vals = vals[keep]
        return vals

    def edges_array(self) -> np.ndarray:
        if not self._dropped:
            return self._edges
        keep = np.ones(len(self._edges), dtype=bool)
        keep[list(self._dropped)] = False
        return self._edges[keep]

    @property
    def max_k(self) -> int:
        """Largest trussness present; 0 for an empty map."""
        if self._max_k is None:
            vals = self.values_array()
            self._max_k = int(vals.max()) if len(vals) else 0
        return self._max_k

    def as_dict(self) -> dict[EdgeKey, int]:
        return dict(zip((EdgeKey(u, v) for u, v in self.edges_array().tolist()),
                        self.values_array().tolist()))

    def compact(self) -> "TrussMap":
        """Copy with the overlay folded into fresh arrays."""
        return TrussMap(self.edges_array().copy(), self.values_array(), self._stride)


def truss_decompose(g: Graph) -> TrussMap:
    """Trussness of every edge of ``g`` by bin-sorted support peeling."""
    sup = edge_support(g.indptr, g.indices, g.slot_edge, g.num_edges)
    vals = peel(g.indptr, g.indices, g.slot_edge, g.edges, sup)
    return TrussMap(g.edges, vals, g.num_nodes)


def k_truss_subgraph(g: Graph, t: TrussMap, k: int) -> Graph:
    """The k-truss of ``g``: edges with trussness >= k, isolated nodes dropped."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if len(t) != g.num_edges:
        raise ValueError("truss map does not match the graph")
    return g.edge_subgraph(t.values_array() >= k)


class CascadeOverflow(Exception):
    pass


def cascade(
    u: int,
    v: int,
    k_removed: int,
    common: Callable[[int, int], Iterable[int]],
    trussness: Callable[[int, int], int],
    limit: int | None = None,
) -> dict[EdgeKey, int]:
    """New trussness of the edges affected by deleting ``(u, v)``.

    ``common(a, b)`` must list common neighbors in the graph with ``(u, v)``
    already removed, and ``trussness`` must answer with values from before
    the deletion. One deletion lowers a trussness by at most one, and only
    for edges whose trussness is at most ``k_removed``. Each level ``k`` is
    re-peeled independently: the new k-truss is the k-truss of the old one
    minus the deleted edge, and only edges of trussness exactly ``k`` can
    fall out of it.

    Raises :class:`CascadeOverflow` once more than ``limit`` edges have been
    touched.
    """
    gone = EdgeKey.of(u, v)
    changes: dict[EdgeKey, int] = {}
    touched = 0

    for k in range(3, k_removed + 1):
        need = k - 2
        sup: dict[EdgeKey, int] = {}
        peeled: set[EdgeKey] = set()
        stack: list[EdgeKey] = []

        def level_support(f: EdgeKey) -> int:
            a, b = f
            n = 0
            for w in common(a, b):
                ea, eb = EdgeKey.of(a, w), EdgeKey.of(b, w)
                if ea in peeled or eb in peeled:
                    continue
                if trussness(a, w) >= k and trussness(b, w) >= k:
                    n += 1
            return n

        for w in common(u, v):
            tu, tv = trussness(u, w), trussness(v, w)
            if tu < k or tv < k:
                continue
            for f, tf in ((EdgeKey.of(u, w), tu), (EdgeKey.of(v, w), tv)):
                if tf == k and f not in sup:
                    sup[f] = level_support(f)
                    if sup[f] < need:
                        stack.append(f)
        touched += len(sup)

        while stack:
            f = stack.pop()
            if f in peeled or sup[f] >= need:
                continue
            peeled.add(f)
            changes[f] = k - 1
            a, b = f
            for w in common(a, b):
                ea, eb = EdgeKey.of(a, w), EdgeKey.of(b, w)
                if ea in peeled or eb in peeled:
                    continue
                ta, tb = trussness(a, w), trussness(b, w)
                if ta < k or tb < k:
                    continue
                for h, th in ((ea, ta), (eb, tb)):
                    if th != k:
                        continue
                    if h in sup:
                        sup[h] -= 1
                    else:
                        sup[h] = level_support(h)
                        touched += 1
                    if sup[h] < need:
                        stack.append(h)
            if limit is not None and touched > limit:
                raise CascadeOverflow
        if limit is not None and touched > limit:
            raise CascadeOverflow
    changes.pop(gone, None)
    return changes


def update_trussness(g: Graph, t: TrussMap, removed) -> TrussMap:
    """Trussness of ``g`` minus one edge, derived from the trussness of ``g``.

    The result equals ``truss_decompose(g.without_edges([removed]))``. Only
    edges reachable from the deleted edge through triangles are revisited;
    when that cascade grows past ``CASCADE_LIMIT`` of the edge set the map
    is recomputed from scratch instead.
    """
    u, v = EdgeKey.of(*removed)
    slot = t._slot((u, v))
    if slot < 0 or not g.has_edge(u, v):
        raise KeyError(f"edge {(u, v)} not in graph")
    k_removed = t[(u, v)]
    indptr, indices = g.indptr, g.indices

    def common(a: int, b: int) -> list[int]:
        ws = np.intersect1d(indices[indptr[a]:indptr[a + 1]], indices[indptr[b]:indptr[b + 1]],
                            assume_unique=True).tolist()
        # drop the triangle closed through the deleted edge
        if a in (u, v) and b not in (u, v):
            other = v if a == u else u
            ws = [w for w in ws if w != other]
        elif b in (u, v) and a not in (u, v):
            other = v if b == u else u
            ws = [w for w in ws if w != other]
        return ws

    def trussness(a: int, b: int) -> int:
        return t[(a, b)]

    limit = max(int(CASCADE_LIMIT * g.num_edges), 1)
    try:
        changes = cascade(u, v, k_removed, common, trussness, limit)
    except CascadeOverflow:
        log.debug("cascade from %s exceeded %d edges; recomputing", (u, v), limit)
        return truss_decompose(g.without_edges([(u, v)]))

    changed = dict(t._changed)
    for key, k in changes.items():
        changed[t._slot(key)] = k
    dropped = t._dropped | {slot}
    changed.pop(slot, None)
    if len(dropped) + len(changed) > max(64, len(t._codes) // 8):
        return TrussMap._derive(t, changed, dropped).compact()
    return TrussMap._derive(t, changed, dropped)
