"""Reading and writing graphs: TU-Dortmund multi-graph datasets, plain and
trussness-weighted edge lists, and batch sparsification over a dataset.

TU layout for a dataset ``NAME`` (all node ids global and 1-indexed)::

    NAME_A.txt                "i, j" per line, one line per directed pair
    NAME_graph_indicator.txt  graph id of node i on line i
    NAME_graph_labels.txt     class label of graph g on line g   (optional)
    NAME_node_labels.txt      label of node i on line i          (optional)
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .graph import EdgeKey, Graph, build_graph
from .sparsify import SparsifyConfig, tgs_sparsify
from .truss import TrussMap

JOBS_ENV = "TRUSSPRUNE_JOBS"


class FormatError(ValueError):
    """Malformed input file; carries the path and 1-based line number."""

    def __init__(self, path, line: int | None, message: str):
        self.path, self.line = str(path), line
        where = f"{path}:{line}" if line is not None else str(path)
        super().__init__(f"{where}: {message}")


@dataclass
class DatasetBundle:
    graphs: list[Graph]
    labels: list[int]
    node_labels: list[np.ndarray] | None = None
    name: str = "dataset"

    def __post_init__(self):
        if len(self.graphs) != len(self.labels):
            raise ValueError(f"{len(self.graphs)} graphs but {len(self.labels)} labels")
        if self.node_labels is not None:
            if len(self.node_labels) != len(self.graphs):
                raise ValueError("node_labels must have one entry per graph")
            for g, nl in zip(self.graphs, self.node_labels):
                if len(nl) != g.num_nodes:
                    raise ValueError("node_labels must cover every node")

    def __len__(self) -> int:
        return len(self.graphs)

    def stats(self) -> dict:
        nodes = [g.num_nodes for g in self.graphs]
        edges = [g.num_edges for g in self.graphs]
        return {
            "name": self.name,
            "graphs": len(self.graphs),
            "classes": len(set(self.labels)),
            "avg_nodes": float(np.mean(nodes)) if nodes else 0.0,
            "avg_edges": float(np.mean(edges)) if edges else 0.0,
        }


def _int_lines(path: Path, width: int) -> np.ndarray:
    """Parse a file of ``width`` comma-separated integers per line."""
    rows = []
    with open(path, newline=None) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            parts = [p.strip() for p in line.split(",")]
            if len(parts) != width:
                raise FormatError(path, lineno, f"expected {width} value(s), got {len(parts)}")
            try:
                rows.append([int(p) for p in parts])
            except ValueError:
                raise FormatError(path, lineno, f"non-integer value in {line!r}") from None
    return np.asarray(rows, dtype=np.int64).reshape(-1, width)


def read_tu_dataset(dir_path, name: str) -> DatasetBundle:
    """Load a TU-format dataset; per-graph node ids are the global 1-indexed ids."""
    d = Path(dir_path)
    a_path, ind_path = d / f"{name}_A.txt", d / f"{name}_graph_indicator.txt"
    for p in (a_path, ind_path):
        if not p.is_file():
            raise FileNotFoundError(f"missing dataset file {p}")
    indicator = _int_lines(ind_path, 1).ravel()
    pairs = _int_lines(a_path, 2)
    n = len(indicator)
    bad = np.flatnonzero((pairs < 1).any(axis=1) | (pairs > n).any(axis=1))
    if len(bad):
        raise FormatError(a_path, _line_of(a_path, bad[0]), f"node id outside 1..{n}")
    gids, graph_of = np.unique(indicator, return_inverse=True)
    src_g, dst_g = graph_of[pairs[:, 0] - 1], graph_of[pairs[:, 1] - 1]
    cross = np.flatnonzero(src_g != dst_g)
    if len(cross):
        raise FormatError(a_path, _line_of(a_path, cross[0]), "edge joins nodes of different graphs")

    label_path = d / f"{name}_graph_labels.txt"
    labels = _int_lines(label_path, 1).ravel().tolist() if label_path.is_file() else [0] * len(gids)
    if len(labels) != len(gids):
        raise FormatError(label_path, None, f"{len(labels)} labels for {len(gids)} graphs")
    nl_path = d / f"{name}_node_labels.txt"
    node_lab = _int_lines(nl_path, 1).ravel() if nl_path.is_file() else None
    if node_lab is not None and len(node_lab) != n:
        raise FormatError(nl_path, None, f"{len(node_lab)} node labels for {n} nodes")

    order = np.argsort(src_g, kind="stable")
    bounds = np.searchsorted(src_g[order], np.arange(len(gids) + 1))
    node_ids = np.arange(1, n + 1)
    graphs, per_node = [], []
    for gi in range(len(gids)):
        members = node_ids[graph_of == gi]
        g = build_graph(pairs[order[bounds[gi]:bounds[gi + 1]]], nodes=members)
        graphs.append(g)
        if node_lab is not None:
            per_node.append(node_lab[np.asarray(g.ids) - 1])
    return DatasetBundle(graphs, labels, per_node if node_lab is not None else None, name)


def _line_of(path: Path, row: int) -> int:
    # row index among non-blank lines -> physical line number
    seen = -1
    with open(path, newline=None) as fh:
        for lineno, line in enumerate(fh, 1):
            if line.strip():
                seen += 1
                if seen == row:
                    return lineno
    return row + 1


def write_tu_dataset(bundle: DatasetBundle, dir_path, name: str | None = None) -> None:
    """Write ``bundle`` in TU format; nodes are numbered graph by graph from 1."""
    name = name or bundle.name
    d = Path(dir_path)
    d.mkdir(parents=True, exist_ok=True)
    a_lines, ind_lines, nl_lines = [], [], []
    offset = 0
    for gi, g in enumerate(bundle.graphs):
        for u, v in g.edges.tolist():
            a_lines.append(f"{u + offset + 1}, {v + offset + 1}\n")
            a_lines.append(f"{v + offset + 1}, {u + offset + 1}\n")
        ind_lines.extend([f"{gi + 1}\n"] * g.num_nodes)
        if bundle.node_labels is not None:
            nl_lines.extend(f"{int(x)}\n" for x in bundle.node_labels[gi])
        offset += g.num_nodes
    (d / f"{name}_A.txt").write_text("".join(a_lines))
    (d / f"{name}_graph_indicator.txt").write_text("".join(ind_lines))
    (d / f"{name}_graph_labels.txt").write_text("".join(f"{int(y)}\n" for y in bundle.labels))
    if bundle.node_labels is not None:
        (d / f"{name}_node_labels.txt").write_text("".join(nl_lines))


def _edge_rows(path, width: int):
    with open(path, newline=None) as fh:
        for lineno, line in enumerate(fh, 1):
            s = line.strip()
            if not s or s.startswith("#"):
                continue
            parts = s.split()
            if len(parts) != width:
                raise FormatError(path, lineno, f"expected {width} fields, got {len(parts)}")
            try:
                yield [int(p) for p in parts]
            except ValueError:
                raise FormatError(path, lineno, f"non-integer token in {s!r}") from None


def read_edge_list(path) -> Graph:
    """Whitespace-separated ``u v`` lines; ``#`` starts a comment line."""
    rows = list(_edge_rows(path, 2))
    return build_graph(np.asarray(rows, dtype=np.int64).reshape(-1, 2))


def write_edge_list(path, g: Graph) -> None:
    with open(path, "w") as fh:
        fh.writelines(f"{u} {v}\n" for u, v in g.edge_list())


def write_weighted_edge_list(path, g: Graph, t: TrussMap) -> None:
    """``u v k`` per edge in external ids, ascending key order."""
    ids = g.ids.tolist()
    with open(path, "w") as fh:
        for u, v in g.edges.tolist():
            fh.write(f"{ids[u]} {ids[v]} {t[(u, v)]}\n")


def read_weighted_edge_list(path) -> tuple[Graph, TrussMap]:
    rows = np.asarray(list(_edge_rows(path, 3)), dtype=np.int64).reshape(-1, 3)
    g = build_graph(rows[:, :2])
    weight = {}
    for (a, b, k) in rows.tolist():
        weight[EdgeKey.of(g.index_of(a), g.index_of(b))] = k
    vals = np.asarray([weight[EdgeKey(u, v)] for u, v in g.edges.tolist()], dtype=np.int64)
    return g, TrussMap(g.edges, vals, g.num_nodes)


@dataclass
class BatchReport:
    config: SparsifyConfig
    edges_before: int = 0
    edges_after: int = 0
    pruning_rates: list[float] = field(default_factory=list)
    wall_time: float = 0.0

    def to_dict(self) -> dict:
        """JSON-ready summary; wall time is left out so files are reproducible."""
        return {
            "config": {
                "eta": self.config.eta, "delta": str(self.config.delta),
                "aggregator": self.config.aggregator, "combiner": self.config.combiner,
                "prune_batch": self.config.prune_batch,
            },
            "graphs": len(self.pruning_rates),
            "edges_before": self.edges_before,
            "edges_after": self.edges_after,
            "pruning_rate": (1 - self.edges_after / self.edges_before) if self.edges_before else 0.0,
            "per_graph_pruning_rate": self.pruning_rates,
        }


def _sparsify_one(args):
    g, cfg = args
    out, rep = tgs_sparsify(g, cfg)
    return out.edges, rep.pruning_rate


def default_jobs() -> int:
    return max(int(os.environ.get(JOBS_ENV, "1")), 1)


def batch_sparsify(bundle: DatasetBundle, cfg: SparsifyConfig, jobs: int | None = None) -> tuple[DatasetBundle, BatchReport]:
    """Sparsify every graph of ``bundle`` independently; order is preserved."""
    jobs = default_jobs() if jobs is None else max(int(jobs), 1)
    t0 = time.perf_counter()
    work = [(g, cfg) for g in bundle.graphs]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sparsify_one, work, chunksize=max(len(work) // (4 * jobs), 1)))
    else:
        results = [_sparsify_one(w) for w in work]
    graphs = [Graph(g.ids, edges) for g, (edges, _) in zip(bundle.graphs, results)]
    report = BatchReport(
        cfg,
        edges_before=sum(g.num_edges for g in bundle.graphs),
        edges_after=sum(g.num_edges for g in graphs),
        pruning_rates=[rate for _, rate in results],
        wall_time=time.perf_counter() - t0,
    )
    return DatasetBundle(graphs, list(bundle.labels), bundle.node_labels, bundle.name), report


def write_json(path, payload: dict) -> None:
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")


def features_for(bundle: DatasetBundle, index: int) -> tuple[np.ndarray, str]:
    """Node features for diagnostics: node-label one-hot if labels exist, else degree one-hot."""
    from .diagnostics import degree_onehot_features

    g = bundle.graphs[index]
    if bundle.node_labels is not None:
        every = np.concatenate(bundle.node_labels) if bundle.node_labels else np.zeros(0, np.int64)
        lo, hi = (int(every.min()), int(every.max())) if len(every) else (0, 0)
        x = np.zeros((g.num_nodes, hi - lo + 1))
        x[np.arange(g.num_nodes), np.asarray(bundle.node_labels[index]) - lo] = 1.0
        return x, "node-label-onehot"
    return degree_onehot_features(g), "degree-onehot"
