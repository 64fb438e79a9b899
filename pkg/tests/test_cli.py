import json

import pytest

from minorfree import graph as G, io as gio
from minorfree.cli import main


@pytest.fixture
def grid_file(tmp_path):
    path = tmp_path / "grid.txt"
    gio.write_graph(G.grid(3, 3), path)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_tw(capsys, grid_file):
    code, out, _ = run(capsys, "tw", "--input", grid_file, "--exact", "--json")
    assert code == 0 and json.loads(out)["width"] == 3


def test_solve_engines_agree(capsys, grid_file):
    values = set()
    for engine in ("dp", "flow", "oracle"):
        code, out, _ = run(capsys, "solve", "--input", grid_file, "--problem", "vc", "--engine", engine, "--json")
        assert code == 0
        values.add(json.loads(out)["value"])
    assert values == {4}


def test_solve_with_weights(capsys, tmp_path, grid_file):
    wfile = tmp_path / "w.txt"
    wfile.write_text("4 10\n")
    code, out, _ = run(capsys, "solve", "--input", grid_file, "--problem", "is", "--weights", str(wfile))
    assert code == 0 and out.startswith("value 14")


def test_partition_and_ptas(capsys, grid_file):
    code, out, _ = run(capsys, "partition", "--input", grid_file, "--t", "2", "--json")
    assert code == 0 and len(json.loads(out)["classes"]) == 2
    code, out, _ = run(capsys, "ptas", "--input", grid_file, "--problem", "is", "--t", "3", "--json")
    data = json.loads(out)
    assert code == 0 and data["report"]["guarantee"] == "2/3"


def test_dimacs_input(capsys, tmp_path):
    path = tmp_path / "k3.col"
    gio.write_graph(G.complete(3), path, "dimacs")
    code, out, _ = run(capsys, "oracle", "--input", str(path), "--format", "dimacs", "--problem", "chromatic")
    assert code == 0 and out == "value 3\n"


def test_gnc_exit_codes(capsys, grid_file):
    assert run(capsys, "gnc", "--input", grid_file, "--k", "4")[0] == 0
    code, out, _ = run(capsys, "gnc", "--input", grid_file, "--k", "3")
    assert code == 2 and "decision no" in out


def test_cap_exit_code(capsys, grid_file):
    assert run(capsys, "solve", "--input", grid_file, "--problem", "is", "--width-cap", "1")[0] == 3
    assert run(capsys, "ptas", "--input", grid_file, "--problem", "is", "--width-cap", "0")[0] == 3


def test_parse_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("3 1\n0 0\n")
    code, _, err = run(capsys, "tw", "--input", str(bad))
    assert code == 4 and "line 2" in err
    assert run(capsys, "tw", "--input", str(tmp_path / "missing.txt"))[0] == 4


def test_infeasible_flow_input(capsys, tmp_path):
    path = tmp_path / "c5.txt"
    gio.write_graph(G.cycle(5), path)
    code, _, err = run(capsys, "solve", "--input", str(path), "--problem", "vc", "--engine", "flow")
    assert code == 1 and "odd cycle" in err


def test_oddminor(capsys, tmp_path):
    g = G.Graph(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])
    gpath, ppath = tmp_path / "g.txt", tmp_path / "p.json"
    gio.write_graph(g, gpath)
    ppath.write_text(json.dumps({"pieces": [{"vertices": [0, 1, 2], "kind": "tw"},
                                            {"vertices": [2, 3, 4], "kind": "tw"}], "boundary": [2]}))
    code, out, _ = run(capsys, "oddminor", "--input", str(gpath), "--pieces", str(ppath), "--json")
    assert code == 0 and json.loads(out)["value"] == 3
    ppath.write_text("{}")
    assert run(capsys, "oddminor", "--input", str(gpath), "--pieces", str(ppath))[0] == 4


def test_bench_output_is_reproducible(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(capsys, "bench", "--suite", "oddminor", "--seed", "1", "--output", str(a))[0] == 0
    assert run(capsys, "bench", "--suite", "oddminor", "--seed", "1", "--output", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().splitlines()[0].startswith("instance,algorithm,params")


def test_output_file(capsys, tmp_path, grid_file):
    out = tmp_path / "out.json"
    assert run(capsys, "tw", "--input", grid_file, "--json", "--output", str(out))[0] == 0
    assert json.loads(out.read_text())["width"] >= 3
