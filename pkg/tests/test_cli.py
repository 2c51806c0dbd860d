import json

from helpers import C5, C5_GRAPH6, KMINUS7
import pytest

from lapgap.cli import build_parser, main
from lapgap.generators import complete, complete_minus_edge
from lapgap.graph_io import GRAPH6_HEADER, to_edge_list, to_graph6


@pytest.fixture
def graph_file(tmp_path):
    def write(g, name="graph.g6", edge_list=False):
        path = tmp_path / name
        path.write_text(to_edge_list(g) if edge_list else GRAPH6_HEADER + to_graph6(g) + "\n")
        return str(path)

    return write


def test_certify_prints_bound_and_quotient(graph_file, capsys):
    """Test the text output of a verified certificate."""
    assert main(["certify", graph_file(C5), "--method", "thm1", "--verify"]) == 0
    out = capsys.readouterr().out
    assert "bound: 1.5000 = 3/2" in out
    assert "rayleigh: 1.6667" in out
    assert "pair: (0, 2)" in out
    assert "verified: true" in out


def test_certify_min_degree_on_edge_list(graph_file, capsys):
    """Test that edge-list files are accepted."""
    assert main(["certify", graph_file(C5, "c5.el", edge_list=True), "--method", "thm3"]) == 0
    assert "method: Thm3 (thm3)" in capsys.readouterr().out


def test_certify_json_round_trips_through_verify(graph_file, tmp_path, capsys):
    """Test that a certificate written as JSON verifies, and fails once edited."""
    assert main(["certify", graph_file(KMINUS7), "--json"]) == 0
    record = json.loads(capsys.readouterr().out)
    assert record["method"] == "Thm1"
    assert record["exact_bound"] == "4/3"
    path = tmp_path / "record.json"
    path.write_text(json.dumps(record))
    assert main(["verify", str(path)]) == 0
    assert "verified" in capsys.readouterr().out

    record["witness"][0] *= 2
    path.write_text(json.dumps(record))
    assert main(["verify", str(path), "--json"]) == 1
    assert json.loads(capsys.readouterr().out)["verified"] is False


def test_certify_complete_graph_fails(graph_file):
    """Test that certifying a complete graph exits with 1."""
    assert main(["certify", graph_file(complete(5))]) == 1


def test_spectrum(graph_file, capsys):
    assert main(["spectrum", graph_file(C5), "--solver", "lapack"]) == 0
    out = capsys.readouterr().out
    assert f"graph6: {C5_GRAPH6}" in out
    assert "lambda_n: 1.809016994375" in out


def test_bounds(graph_file, capsys):
    assert main(["bounds", graph_file(C5), "--spectrum", "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["thm1"] == "3/2"
    assert report["lambda_n"] == pytest.approx(1.809016994375)


def test_classify_reports_the_complement_eigenvalue(graph_file, capsys):
    """Test that classify prints the complement eigenvalue next to the printed one."""
    assert main(["classify", graph_file(complete_minus_edge(5))]) == 0
    out = capsys.readouterr().out
    assert "kind: SingleEdgeComplement" in out
    assert "missing edge: (0, 1)" in out
    assert "complement eigenvalue: 5/4 (multiplicity 2)" in out
    assert "printed value 5/6" in out


def test_sweep_and_random_sweep(capsys):
    """Test that both sweeps run and report success."""
    assert main(["sweep", "--n-max", "4", "--workers", "1", "--no-progress"]) == 0
    out = capsys.readouterr().out
    assert "violations: 0" in out
    assert "equality census n=4: 6" in out
    assert main(["random-sweep", "--n", "6", "--trials", "5", "--seed", "2", "--no-progress", "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["mode"] == "random" and report["seed"] == 2


def test_counterexample_and_lemma(capsys):
    """Test the edge-removal and lemma subcommands."""
    assert main(["counterexample", "--k", "3"]) == 0
    assert "every added edge raises lambda_n: true" in capsys.readouterr().out
    assert main(["lemma", "--n-max", "30"]) == 0
    assert "failures: 0" in capsys.readouterr().out


def test_library_errors_exit_with_one(graph_file, tmp_path):
    """Test that library and file errors exit with 1."""
    assert main(["spectrum", str(tmp_path / "missing.g6")]) == 1
    assert main(["sweep", "--n-max", "4", "--checks", "thm9", "--workers", "1", "--no-progress"]) == 1
    assert main(["sweep", "--n-max", "9", "--workers", "1"]) == 1
    assert main(["counterexample", "--k", "2"]) == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{}")
    assert main(["verify", str(bad)]) == 1


def test_binary_files_exit_with_one(tmp_path):
    """Test that non-ASCII graph files and records are reported, not raised."""
    binary = tmp_path / "binary.g6"
    binary.write_bytes(b"\xff\xfe\x00")
    assert main(["spectrum", str(binary)]) == 1
    assert main(["certify", str(binary)]) == 1
    assert main(["verify", str(binary)]) == 1


@pytest.mark.parametrize("argv", [[], ["certify"], ["certify", "x.g6", "--method", "thm2"], ["frobnicate"]])
def test_usage_errors_exit_with_two(argv):
    """Test that argparse errors exit with 2."""
    with pytest.raises(SystemExit) as excinfo:
        main(argv)
    assert excinfo.value.code == 2


def test_every_subcommand_accepts_json():
    """Test that --json parses for every subcommand."""
    parser = build_parser()
    for argv in (["spectrum", "f"], ["lemma"], ["verify", "r.json"], ["sweep", "--n-max", "3"]):
        assert parser.parse_args(argv + ["--json"]).json
