"""Command-line front end.

    trussprune truss     GRAPH -o weighted.txt
    trussprune sparsify  GRAPH --delta 3 -o pruned.txt --report report.json
    trussprune diagnose  GRAPH --k 2,3,4 --layers 0,2,4 -o profile.csv
    trussprune sweep     GRAPH --eta 3 --delta 3,3.25,3.5 -o grid.csv
    trussprune batch     DIR --name PROTEINS --delta 3 -o OUTDIR

Artifacts go to files; a short human-readable summary goes to stdout.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

import numpy as np

from . import dataset_io as dio
from .diagnostics import (
    PropagationConfig, degree_onehot_features, esm, propagate, random_features, truss_region_anrd_profile,
)
from .sparsify import SparsifyConfig, nonincreasing_flags, sweep, tgs_sparsify
from .truss import truss_decompose


def _ints(s: str) -> list[int]:
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}") from None


def _numbers(s: str) -> list[str]:
    out = []
    for x in s.split(","):
        x = x.strip()
        try:
            float(x)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {s!r}") from None
        out.append(x)
    return out


def _number(s: str) -> str:
    return _numbers(s)[0]


def _load(args):
    if args.format == "tu":
        bundle = dio.read_tu_dataset(args.input, args.name)
        if not 0 <= args.graph < len(bundle):
            raise IndexError(f"graph index {args.graph} out of range (dataset has {len(bundle)})")
        return bundle.graphs[args.graph], bundle
    return dio.read_edge_list(args.input), None


def _sparsify_cfg(args, delta, eta=None) -> SparsifyConfig:
    return SparsifyConfig(eta=args.eta if eta is None else eta, delta=delta, aggregator=args.aggregator,
                          combiner=args.combiner, prune_batch=args.prune_batch)


def cmd_truss(args) -> None:
    g, _ = _load(args)
    t = truss_decompose(g)
    dio.write_weighted_edge_list(args.output, g, t)
    print(f"{g.num_nodes} nodes, {g.num_edges} edges, max trussness {t.max_k}")


def cmd_sparsify(args) -> None:
    g, _ = _load(args)
    out, report = tgs_sparsify(g, _sparsify_cfg(args, args.delta))
    dio.write_edge_list(args.output, out)
    if args.report:
        dio.write_json(args.report, report.to_dict(g))
    print(f"pruned {report.pruned_count} of {report.input_edge_count} edges "
          f"(rate {report.pruning_rate:.4f}); {out.num_edges} remain")


def cmd_diagnose(args) -> None:
    g, bundle = _load(args)
    if args.features == "random":
        x, source = random_features(g, args.dim, args.seed), f"random-normal(seed={args.seed})"
    elif bundle is not None:
        x, source = dio.features_for(bundle, args.graph)
    else:
        x, source = degree_onehot_features(g), "degree-onehot"
    cfg = PropagationConfig(layers=max(args.layers), coeff=args.coeff)
    rows = truss_region_anrd_profile(g, x, args.k, args.layers, cfg)
    with open(args.output, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["k", "layers", "nodes", "anrd"])
        for r in rows:
            w.writerow([r.k, r.layers, r.nodes, repr(r.anrd)])
    if args.esm:
        np.savetxt(args.esm, esm(propagate(g, x, cfg)), delimiter=",", fmt="%.17g")
    print(f"features: {source}; {len(rows)} profile rows")


def cmd_sweep(args) -> None:
    g, _ = _load(args)
    base = _sparsify_cfg(args, args.delta[0], eta=args.eta[0])
    rows = sweep(g, args.eta, args.delta, base)
    flags = nonincreasing_flags(rows)
    with open(args.output, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["eta", "delta", "pruned_count", "pruning_rate", "edges_remaining", "nonincreasing"])
        for r, ok in zip(rows, flags):
            w.writerow([r.eta, r.delta, r.pruned_count, repr(r.pruning_rate), r.edges_remaining, int(ok)])
    bad = flags.count(False)
    print(f"{len(rows)} rows; " + ("pruned counts non-increasing in delta" if not bad
                                    else f"{bad} row(s) break non-increasing pruned counts"))


def cmd_batch(args) -> None:
    bundle = dio.read_tu_dataset(args.input, args.name)
    out, report = dio.batch_sparsify(bundle, _sparsify_cfg(args, args.delta), jobs=args.jobs)
    dio.write_tu_dataset(out, args.output, args.name)
    dio.write_json(Path(args.output) / f"{args.name}_report.json", report.to_dict())
    print(f"{len(out)} graphs; edges {report.edges_before} -> {report.edges_after}; "
          f"{report.wall_time:.2f}s")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="trussprune", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    def graph_input(sp):
        sp.add_argument("input", help="edge list file, or dataset directory with --format tu")
        sp.add_argument("--format", choices=["edgelist", "tu"], default="edgelist")
        sp.add_argument("--name", help="TU dataset name (with --format tu)")
        sp.add_argument("--graph", type=int, default=0, help="0-based graph index in a TU dataset")
        sp.add_argument("-o", "--output", required=True)

    def prune_flags(sp, sweep_mode=False):
        if sweep_mode:
            sp.add_argument("--eta", type=_ints, default=[3], help="comma-separated cutoffs")
            sp.add_argument("--delta", type=_numbers, required=True, help="comma-separated thresholds")
        else:
            sp.add_argument("--eta", type=int, default=3)
            sp.add_argument("--delta", type=_number, required=True)
        sp.add_argument("--aggregator", choices=["mean", "min"], default="mean")
        sp.add_argument("--combiner", choices=["min", "mean"], default="min")
        sp.add_argument("--prune-batch", type=int, choices=[1, 2, 3], default=1)

    sp = sub.add_parser("truss", help="write edge trussness as a weighted edge list")
    graph_input(sp)
    sp.set_defaults(func=cmd_truss)

    sp = sub.add_parser("sparsify", help="prune dense-region edges")
    graph_input(sp)
    prune_flags(sp)
    sp.add_argument("--report", help="JSON decision log")
    sp.set_defaults(func=cmd_sparsify)

    sp = sub.add_parser("diagnose", help="ANRD profile per truss region")
    graph_input(sp)
    sp.add_argument("--k", type=_ints, default=[2, 3, 4])
    sp.add_argument("--layers", type=_ints, default=[2])
    sp.add_argument("--coeff", type=float, default=0.5)
    sp.add_argument("--features", choices=["random", "onehot"], default="random",
                    help="random normal, or node-label / degree one-hot")
    sp.add_argument("--dim", type=int, default=16)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--esm", help="also dump the distance matrix at the deepest layer count")
    sp.set_defaults(func=cmd_diagnose)

    sp = sub.add_parser("sweep", help="pruning rate over an (eta, delta) grid")
    graph_input(sp)
    prune_flags(sp, sweep_mode=True)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("batch", help="sparsify every graph of a TU dataset")
    sp.add_argument("input", help="dataset directory")
    sp.add_argument("--name", required=True)
    sp.add_argument("-o", "--output", required=True, help="output directory")
    sp.add_argument("--jobs", type=int, default=None, help=f"worker processes (default ${dio.JOBS_ENV} or 1)")
    prune_flags(sp)
    sp.set_defaults(func=cmd_batch)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "format", None) == "tu" and not args.name:
        parser.error("--format tu requires --name")
    try:
        args.func(args)
    except (OSError, ValueError, IndexError, KeyError) as exc:
        print(f"trussprune: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
