"""Unit tests for processor."""

import json
import math
from unittest.mock import patch

import pytest

from .. import processor
from ..exceptions import BudgetExceededError, StreamError
from ..graph_core import build_graph, validate_path
from ..graph_families import gnp_graph, planted_path_graph, turnstile_stream
from ..processor import EdgeStore, StreamRunner, hybrid_run, run_semi_streaming, sample_size
from ..stream_model import EventStream, delete, graph_to_stream, insert

# ── sample_size ──────────────────────────────────────────────────────────────

def test_sample_size_is_ceil_c_n_ln_n() -> None:
    """k = ceil(10 n ln n), with 1 for n <= 1."""
    assert sample_size(1000) == math.ceil(10 * 1000 * math.log(1000))
    assert sample_size(1) == 1
    assert sample_size(10, constant=1) == 24


# ── EdgeStore ────────────────────────────────────────────────────────────────

def test_edge_store_overflows_above_space() -> None:
    """More distinct edges than space means no stored graph."""
    store = EdgeStore(5, False, space=2, insertion_only=True, seed=0)
    for u, v in [(0, 1), (1, 2), (2, 3)]:
        store.update(insert(u, v))

    assert store.edges() is None


def test_edge_store_recovers_turnstile_support() -> None:
    """With deletions, the final support comes back when it fits."""
    store = EdgeStore(6, False, space=50, insertion_only=False, seed=1)
    for event in (insert(0, 1), insert(1, 2), insert(2, 3), delete(1, 2)):
        store.update(event)

    assert store.edges() == frozenset({(0, 1), (2, 3)})


# ── run_semi_streaming ───────────────────────────────────────────────────────

def test_run_semi_streaming_small_graph_is_exact() -> None:
    """When k exceeds m, F = E and exact mode returns lp(G)."""
    g = planted_path_graph(12, 10, seed=3)

    report = run_semi_streaming(graph_to_stream(g, "random", 3), "exact", seed=3)

    assert report.path.length == 11
    assert report.sampler == "reservoir"
    assert report.achieved == g.m
    assert validate_path(g, report.path) is None


def test_run_semi_streaming_turnstile_stream_uses_l0() -> None:
    """Streams with deletions go through the turnstile sampler."""
    g = gnp_graph(30, 6, seed=1)
    stream = turnstile_stream(g, 0.2, seed=1)

    report = run_semi_streaming(stream, "heuristic", seed=2, sample_constant=0.5)

    assert report.sampler == "l0"
    assert validate_path(g, report.path) is None


def test_run_semi_streaming_rejects_invalid_stream() -> None:
    """A negative multiplicity prefix is a StreamError."""
    stream = EventStream(3, False, (delete(0, 1),))

    with pytest.raises(StreamError):
        run_semi_streaming(stream, seed=0)


def test_run_semi_streaming_reservoir_on_deletions_fails() -> None:
    """Forcing the reservoir sampler on a turnstile stream is rejected."""
    stream = EventStream(3, False, (insert(0, 1), delete(0, 1)))

    with pytest.raises(StreamError):
        StreamRunner(0, sampler="reservoir").run_semi_streaming(stream)


def test_run_falls_back_to_heuristic_when_budget_runs_out() -> None:
    """An exhausted exact budget falls back to heuristic extraction."""
    g = planted_path_graph(14, 30, seed=5)
    runner = StreamRunner(5, budget=3)

    report = runner.run_semi_streaming(graph_to_stream(g), "exact")

    assert report.mode == "heuristic"
    assert validate_path(g, report.path) is None


def test_run_is_deterministic_per_seed() -> None:
    """Same stream and seed replay to the same report."""
    g = gnp_graph(50, 10, seed=8)
    stream = graph_to_stream(g, "random", 8)

    first = run_semi_streaming(stream, "core-verify", seed=4, oracle_graph=g, sample_constant=0.3)
    second = run_semi_streaming(stream, "core-verify", seed=4, oracle_graph=g, sample_constant=0.3)

    assert first == second


# ── hybrid_run ───────────────────────────────────────────────────────────────

def test_hybrid_run_is_exact_when_graph_fits() -> None:
    """m <= s gives the exact longest path of the stored graph."""
    g = planted_path_graph(16, 40, seed=2)

    report = hybrid_run(graph_to_stream(g, "random", 2), space=10**6, seed=2)

    assert report.mode == "hybrid-exact"
    assert report.path.length == 15


def test_hybrid_run_falls_back_to_sample_over_budget() -> None:
    """m > s uses the sampled path."""
    g = gnp_graph(40, 20, seed=6)
    k = sample_size(40, 0.1)

    report = hybrid_run(graph_to_stream(g), space=k, seed=6, sample_constant=0.1)

    assert g.m > k
    assert report.mode == "hybrid-sampled"
    assert validate_path(g, report.path) is None


def test_hybrid_run_rejects_space_below_sample_size() -> None:
    """s must be at least k."""
    g = build_graph(10, [(0, 1)])

    with pytest.raises(ValueError):
        hybrid_run(graph_to_stream(g), space=1, seed=0)


def test_hybrid_run_uses_sample_when_exact_search_stops() -> None:
    """A budget overrun on the stored graph falls back to the sample."""
    g = planted_path_graph(10, 5, seed=1)
    runner = StreamRunner(1)

    with patch.object(processor, "exact_longest_path", side_effect=BudgetExceededError(7)):
        report = runner.hybrid_run(graph_to_stream(g), space=10**6)

    assert report.mode == "hybrid-sampled"


# ── Reports ──────────────────────────────────────────────────────────────────

def test_save_run_writes_path_and_key_value_report(tmp_path) -> None:
    """The report file holds sorted key=value lines and the path file the vertices."""
    g = build_graph(4, [(0, 1), (1, 2), (2, 3)])
    runner = StreamRunner(0)
    report = runner.run_semi_streaming(graph_to_stream(g), "exact")

    runner.save_run(report, tmp_path / "path.txt", tmp_path / "report.txt")

    lines = (tmp_path / "report.txt").read_text().splitlines()
    assert lines == sorted(lines)
    assert "length=3" in lines
    assert (tmp_path / "path.txt").read_text().split() in (["0", "1", "2", "3"], ["3", "2", "1", "0"])
    assert json.loads(json.dumps(report.to_dict()))["length"] == 3
