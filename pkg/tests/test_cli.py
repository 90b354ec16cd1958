import json

import pytest

from regkit import cli, fileio
import regkit.constructions as cn
from regkit.graphs import BipartiteGraph, ThreeGraph, Triad, VertexClass
from regkit.partitions import (ThreePartiteFrame, VertexPartition,
                               complete_two_partition)


@pytest.fixture
def fixtures(tmp_path):
    a, b = VertexClass(0, 4), VertexClass(1, 4)
    paths = {}
    paths["complete"] = tmp_path / "complete.bg"
    fileio.save_graph(paths["complete"], BipartiteGraph.complete(a, b))
    paths["half"] = tmp_path / "half.bg"
    fileio.save_graph(paths["half"], BipartiteGraph(
        a, b, [(i, j) for i in range(4) for j in range(4)
               if (i < 2) == (j < 2)]))
    paths["vp"] = tmp_path / "p.vp"
    fileio.save_partition(paths["vp"],
                          VertexPartition.from_labels(a, [0, 0, 1, 1]))
    cls = tuple(VertexClass(i, 2) for i in range(3))
    paths["h3"] = tmp_path / "h.h3"
    fileio.save_threegraph(paths["h3"], ThreeGraph.complete(cls))
    paths["tr"] = tmp_path / "t.tr"
    fileio.save_triad(paths["tr"], Triad.complete(*cls))
    frame = ThreePartiteFrame(cls)
    paths["tp"] = tmp_path / "z.tp"
    fileio.save_twopartition(paths["tp"],
                             complete_two_partition(frame.frame_partition()))
    paths["parts"] = []
    for i, fr in enumerate(cn.part_frames(2)):
        p = tmp_path / f"part{i}.h3"
        fileio.save_threegraph(p, ThreeGraph.complete(fr))
        paths["parts"].append(p)
    paths["tmp"] = tmp_path
    return paths


def run(argv):
    return cli.main([str(a) for a in argv])


def test_check_pair_certified_exit0(fixtures, capsys):
    assert run(["check-pair", "--graph", fixtures["complete"],
                "--delta", "1/4", "--mode", "exhaustive"]) == 0
    assert "CertifiedRegular" in capsys.readouterr().out


def test_check_pair_irregular_exit1(fixtures, capsys):
    assert run(["check-pair", "--graph", fixtures["half"],
                "--eps", "1/4", "--mode", "exhaustive"]) == 1
    assert "IrregularWithWitness" in capsys.readouterr().out


def test_check_pair_requires_one_threshold(fixtures):
    assert run(["check-pair", "--graph", fixtures["complete"]]) == 2
    assert run(["check-pair", "--graph", fixtures["complete"],
                "--eps", "1/4", "--delta", "1/4"]) == 2


def test_bad_rational_exit2(fixtures):
    assert run(["check-pair", "--graph", fixtures["complete"],
                "--delta", "banana"]) == 2


def test_missing_file_exit2(fixtures):
    assert run(["check-pair", "--graph", fixtures["tmp"] / "nope.bg",
                "--delta", "1/4"]) == 2


def test_malformed_file_exit2(fixtures):
    bad = fixtures["tmp"] / "bad.bg"
    bad.write_text("bg 2 2 2\n0 0\n0 0\n")
    assert run(["check-pair", "--graph", bad, "--delta", "1/4"]) == 2


def test_check_partition(fixtures, capsys):
    assert run(["check-partition", "--graph", fixtures["half"],
                "--left", fixtures["vp"], "--right", fixtures["vp"],
                "--delta", "1/4"]) == 0
    assert "PerfectlyRegular" in capsys.readouterr().out


def test_check_3partition(fixtures, capsys):
    assert run(["check-3partition", "--h", fixtures["h3"],
                "--tp", fixtures["tp"], "--delta", "1/2"]) == 0
    assert "passed: True" in capsys.readouterr().out


def test_check_fr_and_quasirandom(fixtures, capsys):
    assert run(["check-fr", "--h", fixtures["h3"],
                "--triad", fixtures["tr"], "--eps", "1/2"]) == 0
    assert run(["quasirandom", "--h", fixtures["h3"],
                "--triad", fixtures["tr"], "--alpha", "1/100"]) == 0
    out = capsys.readouterr().out
    assert "octahedron_sum: 0/1" in out


def test_aux_graph_stdout(fixtures, capsys):
    assert run(["aux-graph", "--h", fixtures["h3"], "--axis", "3"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("bg 4 2 8")


def test_paste_writes_file(fixtures):
    out = fixtures["tmp"] / "pasted.h3"
    assert run(["paste", "--parts", *fixtures["parts"], "--out", out]) == 0
    h = fileio.load_threegraph(out)
    assert [c.size for c in h.classes] == [4, 4, 4]
    assert h.edge_count == 48  # 6 complete parts of 8 triples each


def test_paste_wrong_count_exit2(fixtures):
    assert run(["paste", "--parts", *fixtures["parts"][:3]]) == 2


def test_schedule_json(fixtures, capsys):
    assert run(["--json", "schedule", "--index", "1"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["report"]["values"]["t"]["value"] == "2^250"


def test_verify_pass_and_unknown(capsys):
    assert run(["verify", "--suite", "claim-3.5", "--seed", "7",
                "--trials", "25"]) == 0
    assert run(["verify", "--suite", "does-not-exist"]) == 2


def test_json_reports_are_deterministic(fixtures, capsys):
    argv = ["--json", "verify", "--suite", "eq-red-d", "--seed", "3",
            "--trials", "10"]
    assert run(argv) == 0
    first = capsys.readouterr().out
    assert run(argv) == 0
    second = capsys.readouterr().out
    assert first == second
    doc = json.loads(first)
    assert "wall_time" not in first
    assert doc["passed"] is True


def test_global_flags_accepted_before_subcommand(fixtures, capsys):
    assert run(["--mode", "exhaustive", "check-pair",
                "--graph", fixtures["complete"], "--delta", "1/4"]) == 0
