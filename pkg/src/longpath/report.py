"""Experiment reports: per-trial records, aggregates and CSV/table emission."""

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np
import pandas as pd
from scipy.stats import binomtest

COLUMNS = ("trial", "seed", "path_length", "lp", "ratio", "success", "space_used", "detail")
FORMATS = ("csv", "table")


@dataclass
class TrialRecord:
    trial: int
    seed: int
    path_length: int
    lp: Optional[float] = None
    ratio: Optional[float] = None
    success: bool = False
    space_used: int = 0
    detail: str = ""

    def as_row(self) -> Dict[str, Any]:
        return {
            "trial": self.trial,
            "seed": self.seed,
            "path_length": self.path_length,
            "lp": self.lp,
            "ratio": self.ratio,
            "success": int(self.success),
            "space_used": self.space_used,
            "detail": self.detail,
        }


@dataclass
class ExperimentReport:
    """Trials in index order; ``passed`` is None for experiments that gate nothing."""

    name: str
    records: List[TrialRecord] = field(default_factory=list)
    passed: Optional[bool] = None
    note: str = ""

    @property
    def success_rate(self) -> float:
        if not self.records:
            return 0.0
        return sum(record.success for record in self.records) / len(self.records)

    def confidence_interval(self, level: float = 0.95) -> Tuple[float, float]:
        """Exact binomial interval for the success rate."""
        if not self.records:
            return (0.0, 1.0)
        interval = binomtest(sum(r.success for r in self.records), len(self.records)).proportion_ci(level)
        return (float(interval.low), float(interval.high))

    def aggregates(self) -> Dict[str, Any]:
        def mean(values: List[Optional[float]]) -> Optional[float]:
            finite = [v for v in values if v is not None and math.isfinite(v)]
            return float(np.mean(finite)) if finite else None

        low, high = self.confidence_interval()
        detail = f"ci=[{low:.4f},{high:.4f}]"
        if self.note:
            detail = f"{detail} {self.note}"
        return {
            "trial": "aggregate",
            "seed": "",
            "path_length": mean([r.path_length for r in self.records]),
            "lp": mean([r.lp for r in self.records]),
            "ratio": mean([r.ratio for r in self.records]),
            "success": self.success_rate,
            "space_used": mean([r.space_used for r in self.records]),
            "detail": detail,
        }

    def to_frame(self) -> pd.DataFrame:
        if not self.records:
            return pd.DataFrame(columns=list(COLUMNS))
        rows = [record.as_row() for record in sorted(self.records, key=lambda r: r.trial)]
        rows.append(self.aggregates())
        return pd.DataFrame(rows, columns=list(COLUMNS))


def emit_report(report: ExperimentReport, path: Union[str, Path], fmt: str = "csv") -> Path:
    """Write the report with a fixed column order; identical reports give identical bytes."""
    if fmt not in FORMATS:
        raise ValueError(f"Unsupported report format: {fmt}")
    frame = report.to_frame()
    out = Path(path)
    if fmt == "csv":
        frame.to_csv(out, index=False, float_format="%.6g", lineterminator="\n")
    else:
        text = frame.to_string(index=False) if len(frame) else " ".join(COLUMNS)
        out.write_text(text + "\n", encoding="utf-8")
    return out
