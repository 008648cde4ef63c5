"""Clustering accuracy, parameter sweeps, and the benchmark report.

Accuracy is the fraction of points whose predicted cluster maps onto
their true class under the best one-to-one mapping between predicted and
true labels, found by maximum-weight assignment on the contingency
table. Surplus labels on either side map to nothing and contribute no
matches.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from itertools import product
from typing import Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .datasets import LabeledDataset
from .engine import AlgoConfig, run

__all__ = [
    "REFERENCE_BEST_ACCURACY",
    "contingency_table",
    "accuracy",
    "SweepRow",
    "SweepAggregate",
    "SweepReport",
    "sweep",
    "SweepGrid",
    "BenchmarkEntry",
    "BenchmarkReport",
    "benchmark_table",
    "sweep_report_json",
    "sweep_report_text",
    "benchmark_report_json",
    "benchmark_report_text",
]

# Reference best accuracies for the six benchmark datasets, per variant,
# used for side-by-side comparison in benchmark reports.
REFERENCE_BEST_ACCURACY: dict[str, dict[str, float]] = {
    "scms": {
        "soybean": 0.9149,
        "iris": 0.90,
        "sonar": 0.6202,
        "glass": 0.6449,
        "ionosphere": 0.7151,
        "breast": 0.9542,
    },
    "mcms": {
        "soybean": 0.9787,
        "iris": 0.9667,
        "sonar": 0.6202,
        "glass": 0.6402,
        "ionosphere": 0.7521,
        "breast": 0.9542,
    },
}


def contingency_table(pred: np.ndarray, true: np.ndarray) -> np.ndarray:
    """Count matrix of predicted label x true label co-occurrences."""
    pred = np.asarray(pred)
    true = np.asarray(true)
    if pred.shape != true.shape or pred.ndim != 1:
        raise ValueError(
            f"label vectors must be 1-D and equal-length: {pred.shape} vs {true.shape}"
        )
    if pred.size == 0:
        raise ValueError("need at least one point")
    _, pred_codes = np.unique(pred, return_inverse=True)
    _, true_codes = np.unique(true, return_inverse=True)
    table = np.zeros((pred_codes.max() + 1, true_codes.max() + 1), dtype=np.int64)
    np.add.at(table, (pred_codes, true_codes), 1)
    return table


def accuracy(pred: np.ndarray, true: np.ndarray) -> float:
    """Best-mapping agreement between predicted and true labels, in [0, 1]."""
    table = contingency_table(pred, true)
    rows, cols = linear_sum_assignment(table, maximize=True)
    return float(table[rows, cols].sum()) / float(len(np.asarray(pred)))


@dataclass(frozen=True)
class SweepRow:
    k: int
    r: int
    seed: int
    accuracy: float
    iterations: int
    wall_ms: float


@dataclass(frozen=True)
class SweepAggregate:
    k: int
    mean_accuracy: float
    accuracy_variance: float


@dataclass(frozen=True, eq=False)
class SweepReport:
    variant: str
    rows: tuple[SweepRow, ...]
    aggregates: tuple[SweepAggregate, ...]
    best_accuracy: float
    best_row: SweepRow


def sweep(
    dataset: LabeledDataset,
    variant: str,
    ks: Sequence[int],
    rs: Sequence[int],
    seeds: Sequence[int],
    base_cfg: AlgoConfig | None = None,
) -> SweepReport:
    """Run the clusterer once per (k, r, seed) and aggregate accuracies.

    The target cluster count defaults to the dataset's class count.
    Aggregates are per-k mean and population variance over all rows with
    that k (across seeds and r values).
    """
    if not ks or not rs or not seeds:
        raise ValueError("ks, rs and seeds must be non-empty")
    if dataset.labels is None:
        raise ValueError("sweep needs ground-truth labels")
    base = base_cfg if base_cfg is not None else AlgoConfig(variant=variant)
    target = (
        base.target_clusters
        if base.target_clusters is not None
        else dataset.n_classes
    )

    rows: list[SweepRow] = []
    for k, r, seed in product(ks, rs, seeds):
        cfg = replace(
            base, variant=variant, k=k, r=r, seed=seed, target_clusters=target
        )
        start = time.perf_counter()
        result = run(dataset.features, cfg)
        wall_ms = (time.perf_counter() - start) * 1e3
        rows.append(
            SweepRow(
                k=k,
                r=r,
                seed=seed,
                accuracy=accuracy(result.labels, dataset.labels),
                iterations=result.iterations,
                wall_ms=wall_ms,
            )
        )

    aggregates = []
    for k in ks:
        accs = np.array([row.accuracy for row in rows if row.k == k])
        aggregates.append(
            SweepAggregate(
                k=k,
                mean_accuracy=float(accs.mean()),
                accuracy_variance=float(accs.var()),
            )
        )
    best_row = max(rows, key=lambda row: row.accuracy)
    return SweepReport(
        variant=variant,
        rows=tuple(rows),
        aggregates=tuple(aggregates),
        best_accuracy=best_row.accuracy,
        best_row=best_row,
    )


@dataclass(frozen=True)
class SweepGrid:
    """Parameter grid shared by benchmark sweeps."""

    ks: tuple[int, ...] = (5, 8, 11, 14, 17, 20, 23, 26, 29)
    rs: tuple[int, ...] = (5, 6)
    seeds: tuple[int, ...] = tuple(range(10))
    base_cfg: AlgoConfig | None = None


@dataclass(frozen=True)
class BenchmarkEntry:
    dataset: str
    variant: str
    best_accuracy: float
    best_k: int
    best_r: int
    best_seed: int
    reference_accuracy: float | None
    shortfall: float | None  # reference - best when a reference exists


@dataclass(frozen=True, eq=False)
class BenchmarkReport:
    entries: tuple[BenchmarkEntry, ...]
    grid: SweepGrid = field(default_factory=SweepGrid)


def benchmark_table(
    datasets: Sequence[tuple[str, LabeledDataset]],
    grid: SweepGrid = SweepGrid(),
    variants: Sequence[str] = ("scms", "mcms"),
) -> BenchmarkReport:
    """Best sweep accuracy per dataset and variant, next to the reference
    figures when the dataset has one. An empty dataset list yields an
    empty report."""
    entries: list[BenchmarkEntry] = []
    for name, dataset in datasets:
        for variant in variants:
            report = sweep(
                dataset, variant, grid.ks, grid.rs, grid.seeds, grid.base_cfg
            )
            reference = REFERENCE_BEST_ACCURACY.get(variant, {}).get(name)
            entries.append(
                BenchmarkEntry(
                    dataset=name,
                    variant=variant,
                    best_accuracy=report.best_accuracy,
                    best_k=report.best_row.k,
                    best_r=report.best_row.r,
                    best_seed=report.best_row.seed,
                    reference_accuracy=reference,
                    shortfall=None
                    if reference is None
                    else reference - report.best_accuracy,
                )
            )
    return BenchmarkReport(entries=tuple(entries), grid=grid)


def sweep_report_json(report: SweepReport) -> dict:
    """JSON-ready dict mirroring the sweep report."""
    return {
        "variant": report.variant,
        "rows": [
            {
                "k": row.k,
                "r": row.r,
                "seed": row.seed,
                "accuracy": row.accuracy,
                "iterations": row.iterations,
                "wall_ms": row.wall_ms,
            }
            for row in report.rows
        ],
        "aggregates": [
            {
                "k": agg.k,
                "mean_accuracy": agg.mean_accuracy,
                "accuracy_variance": agg.accuracy_variance,
            }
            for agg in report.aggregates
        ],
        "best_accuracy": report.best_accuracy,
        "best": {
            "k": report.best_row.k,
            "r": report.best_row.r,
            "seed": report.best_row.seed,
        },
    }


def sweep_report_text(report: SweepReport) -> str:
    """Aligned-column rendering of the sweep report."""
    lines = [f"variant: {report.variant}"]
    lines.append(f"{'k':>4} {'r':>3} {'seed':>5} {'accuracy':>9} {'iters':>6} {'wall_ms':>9}")
    for row in report.rows:
        lines.append(
            f"{row.k:>4} {row.r:>3} {row.seed:>5} {row.accuracy:>9.4f} "
            f"{row.iterations:>6} {row.wall_ms:>9.1f}"
        )
    lines.append("")
    lines.append(f"{'k':>4} {'mean':>9} {'variance':>10}")
    for agg in report.aggregates:
        lines.append(
            f"{agg.k:>4} {agg.mean_accuracy:>9.4f} {agg.accuracy_variance:>10.6f}"
        )
    lines.append("")
    lines.append(
        f"best accuracy {report.best_accuracy:.4f} at k={report.best_row.k}, "
        f"r={report.best_row.r}, seed={report.best_row.seed}"
    )
    return "\n".join(lines) + "\n"


def benchmark_report_json(report: BenchmarkReport) -> dict:
    """JSON-ready dict mirroring the benchmark report."""
    return {
        "grid": {
            "ks": list(report.grid.ks),
            "rs": list(report.grid.rs),
            "seeds": list(report.grid.seeds),
        },
        "results": [
            {
                "dataset": e.dataset,
                "variant": e.variant,
                "best_accuracy": e.best_accuracy,
                "best_k": e.best_k,
                "best_r": e.best_r,
                "best_seed": e.best_seed,
                "reference_accuracy": e.reference_accuracy,
                "shortfall": e.shortfall,
            }
            for e in report.entries
        ],
    }


def benchmark_report_text(report: BenchmarkReport) -> str:
    """Aligned-column rendering of the benchmark report."""
    lines = [
        f"{'dataset':<12} {'variant':<7} {'best':>7} {'reference':>10} {'shortfall':>10}"
    ]
    for e in report.entries:
        ref = "-" if e.reference_accuracy is None else f"{e.reference_accuracy:.4f}"
        short = "-" if e.shortfall is None else f"{e.shortfall:+.4f}"
        lines.append(
            f"{e.dataset:<12} {e.variant:<7} {e.best_accuracy:>7.4f} {ref:>10} {short:>10}"
        )
    return "\n".join(lines) + "\n"
