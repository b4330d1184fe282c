"""Unit tests for harness."""

from unittest.mock import MagicMock, patch

import pytest

from .. import harness
from ..exceptions import Violation
from ..graph_core import PathWitness, build_graph
from ..harness import ExperimentConfig, run_experiment

# ── Configuration ────────────────────────────────────────────────────────────

def test_unknown_experiment_raises() -> None:
    """Names outside the registry are rejected before any work."""
    with pytest.raises(ValueError):
        run_experiment(ExperimentConfig("theorem2"))


def test_zero_trials_raises() -> None:
    """At least one trial is needed."""
    with pytest.raises(ValueError):
        run_experiment(ExperimentConfig("golomb", trials=0))


def test_trial_seeds_are_distinct_and_stable() -> None:
    """Per-trial seeds depend only on the master seed and the index."""
    cfg = ExperimentConfig("golomb", seed=5)

    seeds = [cfg.trial_seed(i) for i in range(10)]

    assert len(set(seeds)) == 10
    assert seeds == [ExperimentConfig("hybrid", seed=5).trial_seed(i) for i in range(10)]


# ── Experiments ──────────────────────────────────────────────────────────────

def test_theorem1_small_gnp() -> None:
    """Every trial records a valid path and the average degree."""
    report = run_experiment(ExperimentConfig("theorem1", trials=3, n=40, d=6.0))

    assert len(report.records) == 3
    assert all(r.detail.startswith("d=") for r in report.records)
    assert report.passed is not None


def test_golomb_witness_is_exact() -> None:
    """The planted witness always reaches lp(H) = 2 lc(sigma)."""
    report = run_experiment(ExperimentConfig("golomb", trials=8, r=5, seed=2))

    assert all(r.success for r in report.records)
    assert all(0 < r.ratio <= 2 for r in report.records)
    assert "target=" in report.note


def test_golomb_is_reproducible() -> None:
    """Same configuration, same report frame."""
    cfg = ExperimentConfig("golomb", trials=4, r=6, seed=9)

    assert run_experiment(cfg).to_frame().equals(run_experiment(cfg).to_frame())


def test_reservoir_uniformity_records_sound_samples() -> None:
    """Each trial keeps min(k, m) true edges and the chi-square p-value is noted."""
    report = run_experiment(ExperimentConfig("sampler-uniformity", trials=50, m=20, k=4, sampler="reservoir"))

    assert len(report.records) == 50
    assert all(r.success for r in report.records)
    assert report.note.startswith("chi2_p=")


def test_dlp_struct_small_rs() -> None:
    """Trimmed paths stay planted on the two-edge matching."""
    report = run_experiment(ExperimentConfig("dlp-struct", trials=2))

    assert report.passed is True
    assert all(r.path_length == r.lp for r in report.records)


def test_undirected_lemmas_small_rs() -> None:
    """The witness meets its bound and no path beats the path bound."""
    report = run_experiment(ExperimentConfig("undir-lemmas", trials=2))

    assert report.passed is True
    assert all("paths=" in r.detail for r in report.records)


def test_insdel_lemmas_cover_every_j() -> None:
    """One trial per J in [1, N] for n = 4, N = 4."""
    report = run_experiment(ExperimentConfig("insdel-lemmas", trials=1, n=4, N=4))

    assert [r.detail.split()[0] for r in report.records] == ["J=1", "J=2", "J=3", "J=4"]
    assert report.passed is True


def test_hybrid_small_graphs_are_exact() -> None:
    """With ample space the hybrid run stores everything and returns lp."""
    report = run_experiment(ExperimentConfig("hybrid", trials=2, n=10, m=8, space=1000))

    assert all(r.detail == "hybrid-exact" for r in report.records)
    assert all(r.path_length == 9 for r in report.records)
    assert report.passed is True


def test_index_roundtrip_gates_nothing() -> None:
    """The illustrative experiment only reports a recovery rate."""
    report = run_experiment(ExperimentConfig("index-roundtrip", trials=2))

    assert report.passed is None
    assert report.note.startswith("recovered=")


@patch.object(harness, "validate_path")
def test_invalid_output_path_aborts(mock_validate) -> None:
    """An invalid path never reaches the aggregates."""
    mock_validate.return_value = Violation("not-an-edge", 0)

    with pytest.raises(RuntimeError):
        run_experiment(ExperimentConfig("golomb", trials=1, r=3))


def test_dlp_struct_two_blocks_enumerates_every_path() -> None:
    """r = 2, t = 2 gives a 12-vertex instance, inside the enumeration limit."""
    report = run_experiment(ExperimentConfig("dlp-struct", trials=2, r=2, t=2, seed=3))

    assert report.passed is True
    assert all(r.detail.startswith("paths=") and "skipped" not in r.detail for r in report.records)


def test_dlp_struct_large_instance_checks_witness_only() -> None:
    """Above the enumeration limit the planted witness is still verified."""
    report = run_experiment(ExperimentConfig("dlp-struct", trials=1, r=3, t=2))

    assert report.passed is True
    assert report.records[0].detail.startswith("paths=skipped")


def test_hybrid_over_budget_passes_nothing() -> None:
    """When no trial fits into the space bound the gate stays closed."""
    report = run_experiment(ExperimentConfig("hybrid", trials=2, n=10, m=8, space=5, sample_constant=0.1))

    assert all(r.detail == "hybrid-sampled" for r in report.records)
    assert all(r.lp == 9 for r in report.records)
    assert report.passed is False
    assert report.note == "exact_trials=0"


@patch.object(harness, "StreamRunner")
@patch.object(harness, "gnp_graph")
def test_theorem1_compares_against_rounded_up_degree(mock_gnp, mock_runner) -> None:
    """A single edge is d/3 for d = 3 but not for d = 3.2."""
    mock_runner.return_value.run_semi_streaming.return_value = MagicMock(path=PathWitness((0, 1)), space_used=0)
    complete = [(u, v) for u in range(5) for v in range(u + 1, 5)]
    mock_gnp.side_effect = [
        build_graph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)]),
        build_graph(5, complete[:-2]),
    ]

    report = run_experiment(ExperimentConfig("theorem1", trials=2))

    assert [r.success for r in report.records] == [True, False]
    assert [r.detail for r in report.records] == ["d=3.000", "d=3.200"]


# ── Parallel trials ──────────────────────────────────────────────────────────

def test_workers_do_not_change_the_report() -> None:
    """A process pool returns the serial report, trial for trial."""
    serial = run_experiment(ExperimentConfig("golomb", trials=6, r=7, seed=11, workers=1))
    pooled = run_experiment(ExperimentConfig("golomb", trials=6, r=7, seed=11, workers=2))

    assert pooled.to_frame().equals(serial.to_frame())
    assert pooled.note == serial.note


def test_workers_keep_insdel_trial_numbering() -> None:
    """Trial numbers run on across J in either mode."""
    cfg = ExperimentConfig("insdel-lemmas", trials=2, n=4, N=4, workers=2)

    report = run_experiment(cfg)

    assert [r.trial for r in report.records] == list(range(8))
    assert [r.seed for r in report.records] == [cfg.trial_seed(i) for i in range(8)]


def test_zero_workers_raises() -> None:
    """The pool needs at least one worker."""
    with pytest.raises(ValueError):
        run_experiment(ExperimentConfig("golomb", workers=0))
