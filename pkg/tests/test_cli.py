"""Command-line surface: exit codes, formats, SVG structure."""

import json
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from wgg.cli import main
from wgg.fileio import read_graph, read_instance, write_instance, write_tree
from wgg.graphs import Instance, oracle_construct
from wgg.drawings import Tree


@pytest.fixture
def fixture_instance(tmp_path):
    inst = Instance([(0, 0), (2, 0), (1, 2)], [(1, -0.1)], label="cli-fixture")
    path = tmp_path / "inst.json"
    write_instance(path, inst)
    return path, inst


class TestConstruct:
    def test_writes_canonical_graph(self, tmp_path, fixture_instance):
        path, inst = fixture_instance
        out = tmp_path / "g.txt"
        assert main(["construct", "--input", str(path), "--out", str(out)]) == 0
        n, edges = read_graph(out)
        assert n == 3 and edges == {(0, 2), (1, 2)}

    def test_empty_witnesses_complete_graph(self, tmp_path):
        path = tmp_path / "inst.json"
        write_instance(path, Instance([(0, 0), (1, 0), (0, 1)]))
        out = tmp_path / "g.txt"
        for algo in ("brute", "halfplane", "voronoi"):
            assert main(["construct", "--input", str(path),
                         "--algorithm", algo, "--out", str(out)]) == 0
            assert read_graph(out)[1] == {(0, 1), (0, 2), (1, 2)}

    def test_algorithms_byte_identical(self, tmp_path, fixture_instance, capsys):
        path, _ = fixture_instance
        outputs = set()
        for algo in ("brute", "halfplane", "voronoi"):
            assert main(["construct", "--input", str(path), "--algorithm", algo]) == 0
            outputs.add(capsys.readouterr().out)
        assert len(outputs) == 1

    def test_check_flag_passes(self, tmp_path, fixture_instance):
        path, _ = fixture_instance
        out = tmp_path / "g.txt"
        assert main(["construct", "--input", str(path), "--algorithm",
                     "halfplane", "--check", "--out", str(out)]) == 0

    def test_check_flag_detects_disagreement(self, tmp_path, fixture_instance,
                                             monkeypatch):
        import wgg.cli as cli_mod
        from wgg.graphs import WitnessGabrielGraph

        def wrong(inst, tol=None):
            return WitnessGabrielGraph(inst.vertices, frozenset())

        monkeypatch.setitem(cli_mod.__dict__, "construction_algorithm",
                            lambda name: wrong)
        path, _ = fixture_instance
        assert main(["construct", "--input", str(path),
                     "--algorithm", "halfplane", "--check"]) == 3

    def test_k_gabriel(self, tmp_path, fixture_instance, capsys):
        path, _ = fixture_instance
        assert main(["construct", "--input", str(path), "--k", "2"]) == 0
        assert capsys.readouterr().out.startswith("3 3\n")

    def test_k_needs_brute(self, fixture_instance):
        path, _ = fixture_instance
        assert main(["construct", "--input", str(path),
                     "--algorithm", "voronoi", "--k", "2"]) == 2

    def test_malformed_json_exit_2(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{", encoding="utf-8")
        assert main(["construct", "--input", str(bad)]) == 2


class TestVerify:
    def test_accepts_tree_drawing(self, tmp_path):
        from wgg.drawings import draw_tree
        from wgg.fileio import write_graph

        inst, edges = draw_tree(Tree((1, 1, 2)))
        vfile = tmp_path / "v.json"
        write_instance(vfile, Instance(inst.vertices, label="vertices"))
        gfile = tmp_path / "g.txt"
        write_graph(gfile, inst.n, edges)
        out = tmp_path / "w.json"
        assert main(["verify", "--vertices", str(vfile),
                     "--graph", str(gfile), "--out", str(out)]) == 0
        witness_inst = read_instance(out)
        got = oracle_construct(Instance(witness_inst.vertices, witness_inst.witnesses))
        assert got.edges == edges

    def test_rejects_k3333(self, tmp_path):
        from wgg.drawings import k3333_candidate
        from wgg.fileio import write_graph

        cand = k3333_candidate()
        vfile = tmp_path / "v.json"
        write_instance(vfile, Instance(cand.vertices))
        gfile = tmp_path / "g.txt"
        write_graph(gfile, cand.n, cand.edges)
        out = tmp_path / "report.json"
        assert main(["verify", "--vertices", str(vfile),
                     "--graph", str(gfile), "--out", str(out)]) == 1
        report = json.loads(out.read_text())
        assert report["verdict"] == "rejected"
        i, j = report["nonedge"]
        assert i % 4 == j % 4

    def test_vertex_count_mismatch_exit_2(self, tmp_path):
        vfile = tmp_path / "v.json"
        write_instance(vfile, Instance([(0, 0), (1, 0)]))
        gfile = tmp_path / "g.txt"
        gfile.write_text("3 0\n", encoding="utf-8")
        assert main(["verify", "--vertices", str(vfile), "--graph", str(gfile)]) == 2


class TestDraw:
    def test_tree_with_svg(self, tmp_path):
        tfile = tmp_path / "tree.txt"
        write_tree(tfile, Tree((1, 1, 2, 2)))  # five nodes
        svg = tmp_path / "out.svg"
        inst_path = tmp_path / "i.json"
        graph_path = tmp_path / "g.txt"
        assert main(["draw", "tree", "--input", str(tfile),
                     "--out-instance", str(inst_path),
                     "--out-graph", str(graph_path), "--svg", str(svg)]) == 0
        inst = read_instance(inst_path)
        n, edges = read_graph(graph_path)
        assert n == 5 and len(edges) == 4
        assert len(inst.witnesses) == 8  # two per non-root node

        root = ET.fromstring(svg.read_text())
        by_class = {}
        for el in root.iter():
            cls = el.attrib.get("class")
            if cls:
                by_class[cls] = by_class.get(cls, 0) + 1
        assert by_class["vertex"] == 5
        assert by_class["witness"] == 8
        assert by_class["edge"] == 4

    def test_svg_disks_counted(self, tmp_path):
        tfile = tmp_path / "tree.txt"
        write_tree(tfile, Tree((1,)))
        svg = tmp_path / "out.svg"
        assert main(["draw", "tree", "--input", str(tfile),
                     "--out-instance", str(tmp_path / "i.json"),
                     "--out-graph", str(tmp_path / "g.txt"),
                     "--svg", str(svg), "--disks"]) == 0
        root = ET.fromstring(svg.read_text())
        disks = [el for el in root.iter() if el.attrib.get("class") == "disk"]
        assert len(disks) == 1

    def test_bipartite(self, tmp_path):
        inst_path = tmp_path / "i.json"
        graph_path = tmp_path / "g.txt"
        assert main(["draw", "bipartite", "--m", "3", "--n", "3",
                     "--out-instance", str(inst_path),
                     "--out-graph", str(graph_path)]) == 0
        inst = read_instance(inst_path)
        _, edges = read_graph(graph_path)
        assert oracle_construct(inst).edges == edges
        assert len(edges) == 9

    def test_reduce(self, tmp_path):
        inst_path = tmp_path / "i.json"
        graph_path = tmp_path / "g.txt"
        assert main(["draw", "reduce", "--n", "6", "--target", "7",
                     "--out-instance", str(inst_path),
                     "--out-graph", str(graph_path)]) == 0
        _, edges = read_graph(graph_path)
        assert len(edges) == 7
        inst = read_instance(inst_path)
        assert oracle_construct(inst).edge_count == 7

    def test_hexagonal(self, tmp_path):
        assert main(["draw", "hexagonal", "--rings", "1",
                     "--out-instance", str(tmp_path / "i.json"),
                     "--out-graph", str(tmp_path / "g.txt")]) == 0
        n, edges = read_graph(tmp_path / "g.txt")
        assert n == 6 and len(edges) == 6

    def test_missing_parameters_exit_2(self, tmp_path):
        assert main(["draw", "bipartite", "--m", "3"]) == 2
        assert main(["draw", "tree"]) == 2
        assert main(["draw", "reduce", "--n", "5"]) == 2


class TestBench:
    def test_csv_output(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"sizes": [[5, 5]], "trials": 2, "seed": 7}),
                       encoding="utf-8")
        assert main(["bench", "--config", str(cfg)]) == 0
        lines = capsys.readouterr().out.strip().split("\n")
        assert lines[0] == "algorithm,n,w,trial,milliseconds,edges"
        assert len(lines) == 1 + 6  # 3 algorithms x 2 trials

    def test_rerun_identical_edges(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"sizes": [[6, 4]], "trials": 2, "seed": 3}),
                       encoding="utf-8")
        main(["bench", "--config", str(cfg)])
        first = [ln.split(",")[-1] for ln in
                 capsys.readouterr().out.strip().split("\n")[1:]]
        main(["bench", "--config", str(cfg)])
        second = [ln.split(",")[-1] for ln in
                  capsys.readouterr().out.strip().split("\n")[1:]]
        assert first == second

    def test_empty_sizes_header_only(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"sizes": [], "trials": 1, "seed": 0}),
                       encoding="utf-8")
        assert main(["bench", "--config", str(cfg)]) == 0
        assert capsys.readouterr().out == "algorithm,n,w,trial,milliseconds,edges\n"

    def test_bad_config_exit_2(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text("[]", encoding="utf-8")
        assert main(["bench", "--config", str(cfg)]) == 2
        cfg.write_text(json.dumps({"sizes": [[0, 1]]}), encoding="utf-8")
        assert main(["bench", "--config", str(cfg)]) == 2
