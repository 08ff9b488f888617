import io
import json

import pytest

from cli import main
from constructions import named
from core import emit, is_proper, parse


@pytest.fixture
def graph_file(tmp_path):
    def write(g, fmt="edgelist", name="g.txt"):
        path = tmp_path / name
        path.write_text(emit(g, fmt))
        return str(path)
    return write


def colours_from(text):
    return [int(line.split()[1]) for line in text.splitlines()]


def test_check_fragile(graph_file, capsys):
    assert main(["check", graph_file(named("c5"))]) == 0
    assert capsys.readouterr().out == "fragile\n"


def test_check_not_fragile_prints_witness(graph_file, capsys):
    assert main(["check", graph_file(named("k4"))]) == 1
    assert capsys.readouterr().out == "not fragile\nwitness: 0 1 2 3\n"


def test_check_json(graph_file, capsys):
    assert main(["--json", "check", graph_file(named("k4"))]) == 1
    assert json.loads(capsys.readouterr().out) == {"fragile": False, "witness": [0, 1, 2, 3]}


def test_check_reads_stdin(monkeypatch, capsys):
    monkeypatch.setattr("sys.stdin", io.StringIO("0 1\n1 2\n"))
    assert main(["check", "-"]) == 0
    assert capsys.readouterr().out == "fragile\n"


def test_colour_constructive(graph_file, capsys):
    g = named("gadget")
    assert main(["colour", graph_file(g), "--verify"]) == 0
    colours = colours_from(capsys.readouterr().out)
    assert len(colours) == g.n
    assert is_proper(g, colours) and max(colours) <= 4


def test_colour_modes_and_stats(graph_file, capsys):
    path = graph_file(named("petersen"), "graph6")
    assert main(["--json", "colour", path, "--format", "graph6", "--mode", "exact"]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec["colours_used"] == 3 and rec["mode"] == "exact"

    assert main(["--json", "colour", graph_file(named("c5")), "--stats"]) == 0
    captured = capsys.readouterr()
    rec = json.loads(captured.out)
    assert set(rec["stats"]) == {"queries", "memo_hits", "leaf_calls", "max_depth"}
    assert "queries=" in captured.err


def test_colour_not_m_fragile(graph_file, capsys):
    path = graph_file(named("k4"))
    assert main(["colour", path]) == 1
    assert capsys.readouterr().err.startswith("error: ")
    assert main(["colour", path, "--m", "5"]) == 0


def test_colour_json_error_envelope(graph_file, capsys):
    assert main(["--json", "colour", graph_file(named("k4"))]) == 1
    assert "error" in json.loads(capsys.readouterr().out)


def test_decompose(graph_file, capsys):
    assert main(["decompose", graph_file(named("c5"))]) == 0
    assert capsys.readouterr().out.splitlines()[-1] == "node 0 cut 0 2 children 1 2"
    assert main(["--json", "decompose", graph_file(named("c5"))]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec["depth"] == 2
    assert rec["nodes"][-1] == {"node": 0, "cut": [0, 2], "children": [1, 2]}


def test_stats(graph_file, capsys):
    assert main(["stats", graph_file(named("c4"))]) == 0
    lines = [line.split() for line in capsys.readouterr().out.splitlines()]
    assert ["tight_girth4", "true"] in lines


def test_condition(graph_file, capsys):
    path = graph_file(named("c5"))
    assert main(["condition", path, "--cond", "C1", "--verts", "0,2", "--verify"]) == 0
    colours = colours_from(capsys.readouterr().out)
    assert colours[0] == colours[2]


@pytest.mark.parametrize("verts", ["0,1", "a,b", "0", "0,9"])
def test_condition_rejects_bad_queries(graph_file, capsys, verts):
    assert main(["condition", graph_file(named("c5")), "--cond", "c1", "--verts", verts]) == 2
    assert "error: " in capsys.readouterr().err


def test_gen_tight_chain(capsys):
    assert main(["gen", "tight-chain", "--k", "2"]) == 0
    g = parse(capsys.readouterr().out)
    assert (g.n, g.edge_count) == (6, 10)


def test_gen_random_records_seed(capsys):
    assert main(["gen", "random", "--n", "12", "--seed", "3"]) == 0
    text = capsys.readouterr().out
    assert text.splitlines()[0] == "# random n=12 seed=3 profile=mixed"
    assert parse(text).n == 12

    assert main(["gen", "random", "--n", "12", "--seed", "3", "--format", "graph6"]) == 0
    captured = capsys.readouterr()
    assert "seed=3" in captured.err
    assert parse(captured.out, "graph6") == parse(text)


def test_gen_from_base_and_input(graph_file, capsys):
    assert main(["gen", "cubic-pair", "--base", "petersen"]) == 0
    assert parse(capsys.readouterr().out).n == 20
    assert main(["gen", "double-subdivide", "--input", graph_file(named("k3"))]) == 0
    assert parse(capsys.readouterr().out).edge_count == 9
    assert main(["--json", "gen", "gpp", "--base", "c5"]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert (rec["n"], rec["e"]) == (20, 30)


def test_gen_errors(capsys):
    assert main(["gen", "mindeg4"]) == 2
    assert "--search" in capsys.readouterr().err
    assert main(["gen", "cubic-pair", "--base", "c5"]) == 2
    assert main(["gen", "gpp", "--base", "k9"]) == 2
    assert "unknown graph name" in capsys.readouterr().err
    with pytest.raises(SystemExit) as info:
        main(["gen", "k9"])
    assert info.value.code == 2


def test_read_errors(tmp_path, capsys):
    assert main(["check", str(tmp_path / "missing.txt")]) == 2
    assert "cannot read" in capsys.readouterr().err
    bad = tmp_path / "bad.txt"
    bad.write_text("0 1\n1 x\n")
    assert main(["check", str(bad)]) == 2
    assert "line 2" in capsys.readouterr().err


def test_verify_small_corpus(capsys):
    assert main(["verify", "engine", "--corpus", "named:c5,k4-e", "--no-cache", "--workers", "2"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "# verify engine corpus=named:c5,k4-e seed=0"
    assert out.splitlines()[-1] == "2/2 passed"


def test_verify_bad_corpus(capsys):
    assert main(["verify", "fragile", "--corpus", "bogus:1"]) == 2


def test_bench_json(capsys):
    assert main(["--json", "bench", "--sizes", "10"]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert [r["n"] for r in rec["rows"]] == [10, 10]
    assert all(r["proper"] for r in rec["rows"])
    assert "bench.item" in rec["spans"]


def test_trace_goes_to_stderr(graph_file, capsys):
    assert main(["--trace", "colour", graph_file(named("c5"))]) == 0
    trace = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert "engine.satisfy" in trace["spans"]
