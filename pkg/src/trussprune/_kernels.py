"""Compiled triangle and peeling kernels over CSR arrays."""

import numpy as np
from numba import njit


@njit(cache=True)
def _above(a, b, deg):
    # total order by (degree, index); triangles are listed lowest-first
    return deg[a] > deg[b] or (deg[a] == deg[b] and a > b)


@njit(cache=True)
def edge_support(indptr, indices, slot_edge, m):
    n = len(indptr) - 1
    deg = indptr[1:] - indptr[:-1]
    sup = np.zeros(m, np.int64)
    mark = np.full(n, -1, np.int64)
    for u in range(n):
        for p in range(indptr[u], indptr[u + 1]):
            w = indices[p]
            if _above(w, u, deg):
                mark[w] = slot_edge[p]
        for p in range(indptr[u], indptr[u + 1]):
            v = indices[p]
            if not _above(v, u, deg):
                continue
            e_uv = slot_edge[p]
            for q in range(indptr[v], indptr[v + 1]):
                w = indices[q]
                if mark[w] >= 0 and _above(w, v, deg):
                    sup[e_uv] += 1
                    sup[mark[w]] += 1
                    sup[slot_edge[q]] += 1
        for p in range(indptr[u], indptr[u + 1]):
            mark[indices[p]] = -1
    return sup


@njit(cache=True)
def _find(indices, lo, hi, x):
    while lo < hi:
        mid = (lo + hi) >> 1
        if indices[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo


@njit(cache=True)
def peel(indptr, indices, slot_edge, edges, sup):
    """Bin-sorted edge peeling; returns trussness per edge id.

    ``sup`` is consumed (decremented in place).
    """
    m = len(sup)
    truss = np.zeros(m, np.int64)
    if m == 0:
        return truss
    top = 0
    for e in range(m):
        if sup[e] > top:
            top = sup[e]
    start = np.zeros(top + 2, np.int64)
    for e in range(m):
        start[sup[e] + 1] += 1
    for s in range(1, top + 2):
        start[s] += start[s - 1]
    order = np.empty(m, np.int64)
    pos = np.empty(m, np.int64)
    fill = start[: top + 1].copy()
    for e in range(m):
        s = sup[e]
        order[fill[s]] = e
        pos[e] = fill[s]
        fill[s] += 1
    removed = np.zeros(m, np.bool_)

    for i in range(m):
        e = order[i]
        s = sup[e]
        truss[e] = s + 2
        u = edges[e, 0]
        v = edges[e, 1]
        if indptr[u + 1] - indptr[u] > indptr[v + 1] - indptr[v]:
            u, v = v, u
        vlo = indptr[v]
        vhi = indptr[v + 1]
        for p in range(indptr[u], indptr[u + 1]):
            f1 = slot_edge[p]
            if removed[f1] or f1 == e:
                continue
            w = indices[p]
            q = _find(indices, vlo, vhi, w)
            if q == vhi or indices[q] != w:
                continue
            f2 = slot_edge[q]
            if removed[f2]:
                continue
            for f in (f1, f2):
                sf = sup[f]
                if sf > s:
                    # swap f to the front of its bin, then shift the bin boundary
                    first = start[sf]
                    g = order[first]
                    if g != f:
                        pf = pos[f]
                        order[first] = f
                        order[pf] = g
                        pos[f] = first
                        pos[g] = pf
                    start[sf] += 1
                    sup[f] = sf - 1
        removed[e] = True
    return truss
