import csv
import json

import pytest

from trussprune.cli import main
from trussprune.dataset_io import read_edge_list, read_tu_dataset, write_edge_list, write_tu_dataset
from trussprune.synthetic import nested_truss_graph, worked_example_graph
from trussprune.graph import build_graph

from test_dataset_io import random_bundle, write_fixture


@pytest.fixture
def worked_file(tmp_path):
    # string ids are not valid in the integer edge-list format; write indices
    g = worked_example_graph()
    p = tmp_path / "worked.txt"
    p.write_text("".join(f"{u} {v}\n" for u, v in g.edge_list(external=False)))
    return p, g


def test_truss_on_tree(tmp_path, capsys):
    src = tmp_path / "tree.txt"
    src.write_text("1 2\n2 3\n2 4\n")
    out = tmp_path / "w.txt"
    assert main(["truss", str(src), "-o", str(out)]) == 0
    assert [line.split()[-1] for line in out.read_text().splitlines()] == ["2", "2", "2"]
    assert "max trussness 2" in capsys.readouterr().out


def test_sparsify_worked_example(worked_file, tmp_path):
    src, g = worked_file
    rep_path, out = tmp_path / "r.json", tmp_path / "s.txt"
    assert main(["sparsify", str(src), "--eta", "2", "--delta", "2.5", "-o", str(out), "--report", str(rep_path)]) == 0
    rep = json.loads(rep_path.read_text())
    ix = g.index_of
    decisions = {frozenset((r["u"], r["v"])): r for r in rep["examined"]}
    kept = decisions[frozenset((ix("v2"), ix("v10")))]
    assert kept["decision"] == "kept"
    assert (kept["strength_u"], kept["strength_v"]) in ((2.6, 2.0), (2.0, 2.6))
    pruned = decisions[frozenset((ix("v1"), ix("v3")))]
    assert pruned["decision"] == "pruned" and pruned["combined"] == 3.0
    assert read_edge_list(out).num_edges == g.num_edges - rep["pruned_count"]


def test_sweep_grid(worked_file, tmp_path, capsys):
    g, _ = nested_truss_graph(8, 20, seed=1)
    src = tmp_path / "nested.txt"
    write_edge_list(src, g)
    out = tmp_path / "grid.csv"
    assert main(["sweep", str(src), "--eta", "3", "--delta", "3,3.25,3.5,3.75,4", "-o", str(out)]) == 0
    rows = list(csv.DictReader(out.open()))
    assert [r["delta"] for r in rows] == ["3", "3.25", "3.5", "3.75", "4"]
    counts = [int(r["pruned_count"]) for r in rows]
    flags = [r["nonincreasing"] == "1" for r in rows]
    assert flags == [True] + [b <= a for a, b in zip(counts, counts[1:])]
    assert "rows" in capsys.readouterr().out


def test_diagnose(tmp_path):
    g, _ = nested_truss_graph(8, 20, seed=2)
    src = tmp_path / "n.txt"
    write_edge_list(src, g)
    out, esm_out = tmp_path / "p.csv", tmp_path / "esm.csv"
    args = ["diagnose", str(src), "--k", "2,4,8,12", "--layers", "0,2", "--seed", "3", "-o", str(out), "--esm", str(esm_out)]
    assert main(args) == 0
    rows = list(csv.DictReader(out.open()))
    assert {r["k"] for r in rows} == {"2", "4", "8"}
    assert len(esm_out.read_text().splitlines()) == g.num_nodes
    first = out.read_bytes()
    assert main(args) == 0
    assert out.read_bytes() == first


def test_diagnose_tu_onehot(tmp_path):
    write_fixture(tmp_path)
    out = tmp_path / "p.csv"
    assert main(["diagnose", str(tmp_path), "--format", "tu", "--name", "TOY", "--features", "onehot", "-o", str(out)]) == 0
    assert out.read_text().startswith("k,layers,nodes,anrd\n")


def test_batch(tmp_path, capsys):
    src = tmp_path / "in"
    write_tu_dataset(random_bundle(5), src)
    dst = tmp_path / "out"
    assert main(["batch", str(src), "--name", "RND", "--delta", "3", "-o", str(dst), "--jobs", "1"]) == 0
    back = read_tu_dataset(dst, "RND")
    report = json.loads((dst / "RND_report.json").read_text())
    assert len(back) == 6 and report["graphs"] == 6
    assert report["edges_after"] == sum(g.num_edges for g in back.graphs)
    first = {p.name: p.read_bytes() for p in dst.iterdir()}
    assert main(["batch", str(src), "--name", "RND", "--delta", "3", "-o", str(dst)]) == 0
    assert {p.name: p.read_bytes() for p in dst.iterdir()} == first


def test_tu_single_graph_input(tmp_path):
    write_fixture(tmp_path)
    out = tmp_path / "w.txt"
    assert main(["truss", str(tmp_path), "--format", "tu", "--name", "TOY", "--graph", "0", "-o", str(out)]) == 0
    assert out.read_text() == "1 2 3\n1 3 3\n2 3 3\n"
    assert main(["truss", str(tmp_path), "--format", "tu", "--name", "TOY", "--graph", "5", "-o", str(out)]) == 1


def test_usage_errors(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["sparsify", "x.txt", "-o", "y.txt"])  # --delta missing
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["sweep", "x.txt", "--delta", "a,b", "-o", "y"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["truss", "x", "--format", "tu", "-o", "y"])
    assert exc.value.code == 2


def test_io_errors_exit_1(tmp_path, capsys):
    assert main(["truss", str(tmp_path / "missing.txt"), "-o", str(tmp_path / "o")]) == 1
    bad = tmp_path / "bad.txt"
    bad.write_text("1 2\n3 x\n")
    assert main(["truss", str(bad), "-o", str(tmp_path / "o")]) == 1
    err = capsys.readouterr().err
    assert "bad.txt:2" in err
