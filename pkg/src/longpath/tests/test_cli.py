"""Unit tests for cli."""

from unittest.mock import MagicMock, patch

import pytest

from .. import cli
from ..constants import RS_FILE, STREAM_FILE, WITNESS_FILE
from ..file_operations import read_json, read_path, read_stream
from ..report import ExperimentReport, TrialRecord

PATH_GRAPH = "# graph directed=0 n=5\n0 1\n1 2\n2 3\n3 4\n"


def _graph_file(tmp_path):
    target = tmp_path / "graph.txt"
    target.write_text(PATH_GRAPH, encoding="ascii")
    return target


# ── Routing ──────────────────────────────────────────────────────────────────

def test_subcommand_routes_to_handler() -> None:
    """Each subcommand dispatches to its handler and returns its exit code."""
    handler = MagicMock(return_value=0)

    with patch.dict(cli._HANDLERS, {"exact": handler}):
        code = cli.main(["exact", "--in", "graph.txt"])

    assert code == 0
    assert handler.call_args.args[0].input == "graph.txt"


def test_missing_subcommand_exits() -> None:
    """argparse rejects an empty command line."""
    with pytest.raises(SystemExit):
        cli.main([])


def test_int_list_accepts_commas_and_digits() -> None:
    """Bit vectors may be written compactly."""
    assert cli._int_list("0110") == [0, 1, 1, 0]
    assert cli._int_list("1, 0,2") == [1, 0, 2]


# ── exact / stream / run ─────────────────────────────────────────────────────

def test_exact_prints_lp(tmp_path, capsys) -> None:
    """A five-vertex path has lp = 4."""
    out = tmp_path / "path.txt"

    code = cli.main(["exact", "--in", str(_graph_file(tmp_path)), "--out", str(out)])

    assert code == cli.EXIT_OK
    assert capsys.readouterr().out.strip() == "lp=4"
    assert read_path(out).length == 4


def test_missing_input_file_is_an_error(tmp_path) -> None:
    """I/O errors map to exit code 2."""
    assert cli.main(["exact", "--in", str(tmp_path / "absent.txt")]) == cli.EXIT_ERROR


def test_stream_then_run(tmp_path) -> None:
    """A random-order stream runs through the exact extraction and writes a JSON report."""
    stream_file = tmp_path / "stream.txt"
    path_file = tmp_path / "p.txt"
    report_file = tmp_path / "run.json"

    assert cli.main(["stream", "--in", str(_graph_file(tmp_path)), "--order", "random", "--seed", "3",
                     "--out", str(stream_file)]) == 0
    assert len(read_stream(stream_file)) == 4

    code = cli.main(["run", "--in", str(stream_file), "--seed", "1", "--path-out", str(path_file),
                     "--report", str(report_file)])

    assert code == 0
    assert read_path(path_file).length == 4
    assert read_json(report_file)["length"] == 4


def test_stream_with_decoys_has_deletions(tmp_path) -> None:
    """--decoys adds inserted-then-deleted non-edges."""
    stream_file = tmp_path / "stream.txt"

    cli.main(["stream", "--in", str(_graph_file(tmp_path)), "--decoys", "1.0", "--out", str(stream_file)])

    assert not read_stream(stream_file).is_insertion_only


# ── gen / verify ─────────────────────────────────────────────────────────────

def test_gen_slp_then_verify_lemma(tmp_path, capsys) -> None:
    """The contracted instance has lp = 2 lc - 1."""
    out = tmp_path / "slp"

    assert cli.main(["gen", "slp", "--r", "6", "--sigma", "1,2,3,0,5,4", "--seed", "2", "--out", str(out)]) == 0
    assert cli.main(["verify", "lemma", "--instance", str(out)]) == 0
    assert "contracted lp=7" in capsys.readouterr().out


def test_gen_dlp_then_verify_everything(tmp_path) -> None:
    """RS file, witness and trimmed-path lemma all check out."""
    out = tmp_path / "dlp"

    assert cli.main(["gen", "dlp", "--r", "2", "--t", "1", "--seed", "4", "--out", str(out)]) == 0
    assert (out / RS_FILE).exists()
    assert cli.main(["verify", "rs", "--instance", str(out)]) == 0
    assert cli.main(["verify", "path", "--instance", str(out), "--path", str(out / WITNESS_FILE)]) == 0
    assert cli.main(["verify", "lemma", "--instance", str(out)]) == 0
    assert cli.main(["verify", "lemma", "--instance", str(out), "--path", str(out / WITNESS_FILE)]) == 0


def test_gen_undirected_then_verify_witness_bound(tmp_path, capsys) -> None:
    """The witness of rs(3, 2, 1) stays within the path-length bound."""
    out = tmp_path / "undir"

    assert cli.main(["gen", "undir-reduction", "--X", "01", "--J", "1", "--rho", "1,0", "--seed", "0",
                     "--out", str(out)]) == 0
    assert read_stream(out / STREAM_FILE).n == 15
    assert cli.main(["verify", "lemma", "--instance", str(out), "--path", str(out / WITNESS_FILE)]) == 0
    assert "|Q|=13" in capsys.readouterr().out


def test_gen_insdel_then_verify_lemma(tmp_path) -> None:
    """n = 4, N = 4: exhaustive bound on the 12-vertex instance."""
    out = tmp_path / "insdel"

    assert cli.main(["gen", "insdel-reduction", "--n", "4", "--X", "0110", "--J", "2", "--out", str(out)]) == 0
    assert cli.main(["verify", "lemma", "--instance", str(out)]) == 0


def test_verify_rs_reports_bad_file(tmp_path, capsys) -> None:
    """A non-induced decomposition fails with exit code 1."""
    rs_file = tmp_path / "rs.txt"
    rs_file.write_text("# graph directed=0 n=4\n# matching 1\n0 2\n1 3\n# matching 2\n0 3\n", encoding="ascii")

    assert cli.main(["verify", "rs", "--rs", str(rs_file)]) == cli.EXIT_FAILED
    assert "rs invalid" in capsys.readouterr().out


def test_verify_path_needs_arguments() -> None:
    """Missing --path is a usage error."""
    assert cli.main(["verify", "path", "--graph", "graph.txt"]) == cli.EXIT_ERROR


def test_verify_path_rejects_non_path(tmp_path) -> None:
    """A vertex sequence using a non-edge fails."""
    path_file = tmp_path / "q.txt"
    path_file.write_text("0\n2\n", encoding="ascii")

    assert cli.main(["verify", "path", "--graph", str(_graph_file(tmp_path)), "--path", str(path_file)]) == 1


# ── experiment ───────────────────────────────────────────────────────────────

@patch.object(cli, "run_experiment")
def test_failed_experiment_exits_one(mock_run, tmp_path) -> None:
    """passed=False maps to exit code 1."""
    mock_run.return_value = ExperimentReport("golomb", [TrialRecord(0, 1, 2)], passed=False)

    code = cli.main(["experiment", "--name", "golomb", "--trials", "1", "--r", "3", "--out", str(tmp_path / "r.csv")])

    assert code == cli.EXIT_FAILED
    cfg = mock_run.call_args.args[0]
    assert (cfg.name, cfg.trials, cfg.r) == ("golomb", 1, 3)


@patch.object(cli, "run_experiment")
def test_experiment_passes_worker_count(mock_run, tmp_path) -> None:
    """--workers reaches the experiment configuration."""
    mock_run.return_value = ExperimentReport("golomb", [TrialRecord(0, 1, 2)], passed=True)

    code = cli.main(["experiment", "--name", "golomb", "--workers", "3", "--out", str(tmp_path / "r.csv")])

    assert code == cli.EXIT_OK
    assert mock_run.call_args.args[0].workers == 3


def test_experiment_writes_report(tmp_path) -> None:
    """An illustrative experiment gates nothing and exits 0."""
    out = tmp_path / "roundtrip.csv"

    code = cli.main(["experiment", "--name", "index-roundtrip", "--trials", "2", "--out", str(out)])

    assert code == cli.EXIT_OK
    assert out.read_text(encoding="utf-8").startswith("trial,seed,path_length")
