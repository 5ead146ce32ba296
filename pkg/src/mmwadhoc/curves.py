"""Sampled distribution curves and their CSV form.

Shared by the analytic evaluator and the Monte Carlo engine so both sides
emit the same schema and can be overlaid downstream.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np


class CurveError(ValueError):
    pass


@dataclass(frozen=True)
class DistributionCurve:
    thresholds_db: tuple[float, ...]
    values: tuple[float, ...]
    kind: str  # "ccdf" | "cdf"
    source: str  # "analytic" | "empirical"
    conditioning: str = "overall"
    stderr: tuple[float, ...] | None = None  # per-point, empirical only
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in ("ccdf", "cdf"):
            raise CurveError(f"kind must be ccdf or cdf, got {self.kind!r}")
        if self.source not in ("analytic", "empirical"):
            raise CurveError(f"source must be analytic or empirical, got {self.source!r}")
        if len(self.values) != len(self.thresholds_db):
            raise CurveError("thresholds and values must have equal length")
        if self.stderr is not None and len(self.stderr) != len(self.values):
            raise CurveError("stderr length mismatch")
        t = np.asarray(self.thresholds_db)
        if len(t) and np.any(np.diff(t) <= 0):
            raise CurveError("thresholds must be strictly increasing")
        v = np.asarray(self.values)
        if len(v) and (v.min() < -1e-12 or v.max() > 1 + 1e-12):
            raise CurveError("values must lie in [0, 1]")


CSV_FIELDS = ("threshold_db", "value", "stderr", "kind", "source", "conditioning")


def curve_rows(curve: DistributionCurve, extra: dict | None = None) -> list[dict]:
    """Flatten a curve into CSV rows; `extra` columns are appended to each."""
    rows = []
    for i, (t, v) in enumerate(zip(curve.thresholds_db, curve.values)):
        row = {
            "threshold_db": f"{t:.6f}",
            "value": f"{v:.10g}",
            "stderr": f"{curve.stderr[i]:.6g}" if curve.stderr is not None else "",
            "kind": curve.kind,
            "source": curve.source,
            "conditioning": curve.conditioning,
        }
        if extra:
            row.update({k: str(v2) for k, v2 in extra.items()})
        rows.append(row)
    return rows


def write_curve_csv(path, curves_with_extras, extra_fields=()) -> None:
    """Write one or more (curve, extra-columns) pairs to a single CSV."""
    fields = list(CSV_FIELDS) + list(extra_fields)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for curve, extra in curves_with_extras:
        for row in curve_rows(curve, extra):
            writer.writerow(row)
    with open(path, "w", newline="") as fh:
        fh.write(buf.getvalue())
