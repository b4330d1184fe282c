"""Unit tests for report."""

import pandas as pd
import pytest

from ..report import COLUMNS, ExperimentReport, TrialRecord, emit_report


def _report() -> ExperimentReport:
    records = [
        TrialRecord(trial=2, seed=12, path_length=5, lp=10.0, ratio=2.0, success=True, space_used=40),
        TrialRecord(trial=0, seed=10, path_length=8, lp=8.0, ratio=1.0, success=True, space_used=30),
        TrialRecord(trial=1, seed=11, path_length=2, lp=9.0, ratio=4.5, success=False, space_used=50),
    ]
    return ExperimentReport("hybrid", records, passed=True, note="target=3")


# ── Aggregates ───────────────────────────────────────────────────────────────

def test_success_rate_and_interval() -> None:
    """Two of three trials succeed; the exact interval contains 2/3."""
    report = _report()
    low, high = report.confidence_interval()

    assert report.success_rate == pytest.approx(2 / 3)
    assert 0.0 < low < 2 / 3 < high < 1.0


def test_empty_report_rates() -> None:
    """No trials: rate 0 and the trivial interval."""
    report = ExperimentReport("golomb")

    assert report.success_rate == 0.0
    assert report.confidence_interval() == (0.0, 1.0)


def test_aggregate_row_means_and_note() -> None:
    """The aggregate row averages numeric columns and carries the note."""
    row = _report().aggregates()

    assert row["trial"] == "aggregate"
    assert row["path_length"] == pytest.approx(5.0)
    assert row["ratio"] == pytest.approx(2.5)
    assert row["detail"].endswith("target=3")


def test_frame_orders_trials_and_appends_aggregate() -> None:
    """Rows follow trial index, then one aggregate row."""
    frame = _report().to_frame()

    assert list(frame.columns) == list(COLUMNS)
    assert list(frame["trial"]) == [0, 1, 2, "aggregate"]


# ── emit_report ──────────────────────────────────────────────────────────────

def test_emit_csv_round_trip(tmp_path) -> None:
    """CSV output has three trial rows and the aggregate."""
    out = emit_report(_report(), tmp_path / "report.csv")

    frame = pd.read_csv(out)

    assert len(frame) == 4
    assert list(frame["success"])[:3] == [1, 0, 1]


def test_emit_is_byte_stable(tmp_path) -> None:
    """The same report always gives the same bytes."""
    first = emit_report(_report(), tmp_path / "a.csv").read_bytes()
    second = emit_report(_report(), tmp_path / "b.csv").read_bytes()

    assert first == second


def test_emit_empty_report_writes_header_only(tmp_path) -> None:
    """A report without trials is just the column header."""
    out = emit_report(ExperimentReport("golomb"), tmp_path / "empty.csv")

    assert out.read_text(encoding="utf-8") == ",".join(COLUMNS) + "\n"


def test_emit_table_format(tmp_path) -> None:
    """The table format writes an aligned text table."""
    out = emit_report(_report(), tmp_path / "report.txt", fmt="table")

    text = out.read_text(encoding="utf-8")

    assert text.splitlines()[0].split() == list(COLUMNS)
    assert "aggregate" in text


def test_emit_rejects_unknown_format(tmp_path) -> None:
    """Only csv and table are supported."""
    with pytest.raises(ValueError):
        emit_report(_report(), tmp_path / "x", fmt="parquet")
