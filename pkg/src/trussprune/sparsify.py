"""Truss-based sparsification: prune high-trussness edges whose endpoints
both sit in dense neighborhoods.

An edge is a candidate when its trussness reaches ``eta``. Candidates are
visited once, densest first. A candidate is pruned when the combined
strength of its endpoints (by default the smaller of the two mean incident
trussness values) reaches ``delta``; trussness is then maintained
incrementally before the next decision.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field, replace
from decimal import Decimal
from fractions import Fraction
from typing import Literal, Sequence

import numpy as np

from .graph import EdgeKey, Graph
from .truss import TrussMap, cascade, truss_decompose

Aggregator = Literal["mean", "min"]

PRUNED, KEPT, SKIPPED = "pruned", "kept", "skipped"


def _exact(x) -> Fraction:
    if isinstance(x, float):
        # 3.25 typed as a float should compare as the decimal 3.25
        return Fraction(Decimal(repr(x)))
    if isinstance(x, str):
        return Fraction(Decimal(x))
    return Fraction(x)


@dataclass(frozen=True)
class SparsifyConfig:
    """Knobs of a sparsification run.

    ``aggregator`` turns a node's incident trussness values into its
    strength; ``combiner`` merges the two endpoint strengths of an edge.
    With ``prune_batch > 1`` trussness is refreshed only after that many
    prunes.
    """

    eta: int = 3
    delta: float | str | Fraction = 3
    aggregator: Aggregator = "mean"
    combiner: Aggregator = "min"
    prune_batch: int = 1

    def __post_init__(self):
        if int(self.eta) != self.eta or self.eta < 2:
            raise ValueError(f"eta must be an integer >= 2, got {self.eta!r}")
        try:
            d = _exact(self.delta)
        except (ValueError, ArithmeticError, TypeError):
            raise ValueError(f"delta must be a number, got {self.delta!r}") from None
        if d < 0:
            raise ValueError(f"delta must be >= 0, got {self.delta!r}")
        if self.aggregator not in ("mean", "min"):
            raise ValueError(f"unknown aggregator {self.aggregator!r}")
        if self.combiner not in ("mean", "min"):
            raise ValueError(f"unknown combiner {self.combiner!r}")
        if self.prune_batch not in (1, 2, 3):
            raise ValueError(f"prune_batch must be 1, 2 or 3, got {self.prune_batch!r}")

    @property
    def delta_exact(self) -> Fraction:
        return _exact(self.delta)

    def variant(self) -> str:
        """Short label of the strength/batch variant."""
        label = f"{self.combiner} ({self.aggregator}, {self.aggregator})"
        return label if self.prune_batch == 1 else f"{label} prune {self.prune_batch}*"


@dataclass(frozen=True)
class Decision:
    edge: EdgeKey
    trussness: int
    strength_u: float | None
    strength_v: float | None
    combined: float | None
    decision: str


@dataclass
class SparsifyReport:
    config: SparsifyConfig
    input_edge_count: int
    examined: list[Decision] = field(default_factory=list)
    pruned_count: int = 0
    trussness_changes: int = 0

    @property
    def pruning_rate(self) -> float:
        return self.pruned_count / self.input_edge_count if self.input_edge_count else 0.0

    def pruned_edges(self) -> list[EdgeKey]:
        return [d.edge for d in self.examined if d.decision == PRUNED]

    def to_dict(self, g: Graph | None = None) -> dict:
        """JSON-ready dict; edges are written in external ids when ``g`` is given."""
        ids = g.ids.tolist() if g is not None else None
        rows = []
        for d in self.examined:
            u, v = (ids[d.edge.u], ids[d.edge.v]) if ids else tuple(d.edge)
            rows.append({
                "u": u, "v": v, "trussness": d.trussness,
                "strength_u": d.strength_u, "strength_v": d.strength_v,
                "combined": d.combined, "decision": d.decision,
            })
        cfg = asdict(self.config)
        cfg["delta"] = str(self.config.delta)
        return {
            "config": cfg,
            "input_edge_count": self.input_edge_count,
            "pruned_count": self.pruned_count,
            "pruning_rate": self.pruning_rate,
            "trussness_changes": self.trussness_changes,
            "examined": rows,
        }


def high_truss_edges(t: TrussMap, eta: int) -> list[EdgeKey]:
    """Edges with trussness >= eta, densest first, ties by ascending key."""
    if eta < 2:
        raise ValueError(f"eta must be >= 2, got {eta}")
    edges, vals = t.edges_array(), t.values_array()
    sel = np.flatnonzero(vals >= eta)
    # edges are key-sorted, so a stable sort keeps key order within ties
    order = sel[np.argsort(-vals[sel], kind="stable")]
    return [EdgeKey(u, v) for u, v in edges[order].tolist()]


def _aggregate(values: Sequence[int], aggregator: str) -> Fraction:
    if not values:
        return Fraction(0)
    if aggregator == "min":
        return Fraction(min(values))
    return Fraction(sum(values), len(values))


def _combine(a: Fraction, b: Fraction, combiner: str) -> Fraction:
    return min(a, b) if combiner == "min" else (a + b) / 2


def node_strength(g: Graph, t: TrussMap, n: int, aggregator: Aggregator = "mean") -> float:
    """Mean (or min) trussness over the edges incident to ``n``; 0 when isolated."""
    vals = [t[(n, w)] for w in g.neighbors(n).tolist()]
    return float(_aggregate(vals, aggregator))


def edge_strength(g: Graph, t: TrussMap, e, cfg: SparsifyConfig = SparsifyConfig()) -> float:
    u, v = EdgeKey.of(*e)
    if not g.has_edge(u, v):
        raise KeyError(f"edge {(u, v)} not in graph")
    su = _aggregate([t[(u, w)] for w in g.neighbors(u).tolist()], cfg.aggregator)
    sv = _aggregate([t[(v, w)] for w in g.neighbors(v).tolist()], cfg.aggregator)
    return float(_combine(su, sv, cfg.combiner))


class TrussState:
    """Mutable graph plus trussness, kept exact under edge deletions."""

    def __init__(self, g: Graph, t: TrussMap | None = None):
        t = t if t is not None else truss_decompose(g)
        self.adj: list[set[int]] = [set(g.neighbors(i).tolist()) for i in range(g.num_nodes)]
        self.tau: dict[EdgeKey, int] = t.as_dict()
        self.changes = 0

    def trussness(self, a: int, b: int) -> int:
        return self.tau[EdgeKey.of(a, b)]

    def strength(self, n: int, aggregator: str) -> Fraction:
        return _aggregate([self.tau[EdgeKey.of(n, w)] for w in self.adj[n]], aggregator)

    def detach(self, e: EdgeKey) -> None:
        """Remove ``e`` from the adjacency only; trussness goes stale."""
        self.adj[e.u].discard(e.v)
        self.adj[e.v].discard(e.u)

    def refresh(self, detached: Sequence[EdgeKey]) -> None:
        """Bring trussness up to date after ``detach`` calls, one edge at a time."""
        for e in detached:
            self.adj[e.u].add(e.v)
            self.adj[e.v].add(e.u)
        for e in detached:
            self.remove(e)

    def remove(self, e: EdgeKey) -> dict[EdgeKey, int]:
        self.detach(e)
        adj = self.adj
        changes = cascade(e.u, e.v, self.tau[e], lambda a, b: adj[a] & adj[b], self.trussness)
        del self.tau[e]
        self.tau.update(changes)
        self.changes += len(changes)
        return changes


def tgs_sparsify(g: Graph, cfg: SparsifyConfig = SparsifyConfig()) -> tuple[Graph, SparsifyReport]:
    """Sparsify ``g``; returns the pruned graph (same node set) and a decision log."""
    t0 = truss_decompose(g)
    state = TrussState(g, t0)
    report = SparsifyReport(cfg, g.num_edges)
    delta = cfg.delta_exact
    pending: list[EdgeKey] = []
    keep = np.ones(g.num_edges, dtype=bool)

    for e in high_truss_edges(t0, cfg.eta):
        k = state.tau[e]
        if k < cfg.eta:
            report.examined.append(Decision(e, k, None, None, None, SKIPPED))
            continue
        su = state.strength(e.u, cfg.aggregator)
        sv = state.strength(e.v, cfg.aggregator)
        s = _combine(su, sv, cfg.combiner)
        if s >= delta:
            decision = PRUNED
            keep[g.edge_id(*e)] = False
            report.pruned_count += 1
            state.detach(e)
            pending.append(e)
            if len(pending) >= cfg.prune_batch:
                state.refresh(pending)
                pending = []
        else:
            decision = KEPT
        report.examined.append(Decision(e, k, float(su), float(sv), float(s), decision))
    if pending:
        state.refresh(pending)
    report.trussness_changes = state.changes
    return g.keep_edges(keep), report


@dataclass(frozen=True)
class SweepRow:
    eta: int
    delta: float | str | Fraction
    pruned_count: int
    pruning_rate: float
    edges_remaining: int


def sweep(g: Graph, etas: Sequence[int], deltas: Sequence, base: SparsifyConfig = SparsifyConfig()) -> list[SweepRow]:
    """One independent sparsification of ``g`` per (eta, delta) pair."""
    if not etas or not deltas:
        raise ValueError("sweep needs at least one eta and one delta")
    rows = []
    for eta in etas:
        for delta in deltas:
            out, rep = tgs_sparsify(g, replace(base, eta=eta, delta=delta))
            rows.append(SweepRow(eta, delta, rep.pruned_count, rep.pruning_rate, out.num_edges))
    return rows


def nonincreasing_flags(rows: Sequence[SweepRow]) -> list[bool]:
    """Per row: does its pruned count stay <= the previous row with the same eta?"""
    flags, last = [], {}
    for r in rows:
        flags.append(r.eta not in last or r.pruned_count <= last[r.eta])
        last[r.eta] = r.pruned_count
    return flags
