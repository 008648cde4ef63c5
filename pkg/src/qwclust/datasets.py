"""Delimited-text dataset loading, imputation, and synthetic blob generation.

Feature cells equal to the schema's missing token are filled with seeded
uniform draws over the observed range of their column, so loads are
reproducible. Class labels may be arbitrary strings; they are coded as
contiguous integers in order of first appearance, which keeps codes
stable across platforms.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

__all__ = [
    "CsvSchema",
    "LabeledDataset",
    "load_csv",
    "write_csv",
    "normalize_minmax",
    "synth_blobs",
    "BENCHMARK_FILES",
    "load_benchmark_dataset",
]

# Canonical benchmark files: comma-delimited, no header, label last, "?" missing.
BENCHMARK_FILES = {
    "soybean": "soybean-small.csv",
    "iris": "iris.csv",
    "sonar": "sonar.csv",
    "glass": "glass.csv",
    "ionosphere": "ionosphere.csv",
    "breast": "breast.csv",
}


@dataclass(frozen=True)
class CsvSchema:
    """Shape of a delimited text file holding one point per row."""

    delimiter: str = ","
    header: bool = False
    label_col: int | None = None
    missing_token: str = "?"


@dataclass(frozen=True, eq=False)
class LabeledDataset:
    """(n, m) float features with optional integer class labels."""

    features: np.ndarray
    labels: np.ndarray | None
    label_names: tuple[str, ...] | None
    provenance: str

    @property
    def n(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    @property
    def n_classes(self) -> int:
        return 0 if self.labels is None else int(self.labels.max()) + 1


def load_csv(
    path: str | Path, schema: CsvSchema = CsvSchema(), seed: int = 0
) -> LabeledDataset:
    """Parse a delimited file into a LabeledDataset.

    Missing feature cells (the schema's missing token) are imputed with
    seeded uniform draws over the observed [min, max] of their column.
    Ragged rows and non-numeric feature cells are parse errors naming
    the offending row and column.
    """
    path = Path(path)
    with open(path, newline="") as fh:
        rows = [row for row in csv.reader(fh, delimiter=schema.delimiter) if row]
    if schema.header and rows:
        rows = rows[1:]
    if not rows:
        raise ValueError(f"{path}: no data rows")

    width = len(rows[0])
    for r, row in enumerate(rows):
        if len(row) != width:
            raise ValueError(f"{path}: row {r} has {len(row)} fields, expected {width}")

    label_col = schema.label_col
    if label_col is not None:
        if label_col < 0:
            label_col += width
        if not 0 <= label_col < width:
            raise ValueError(f"{path}: label column {schema.label_col} out of range")

    feature_cols = [c for c in range(width) if c != label_col]
    if not feature_cols:
        raise ValueError(f"{path}: no feature columns left")

    n = len(rows)
    features = np.empty((n, len(feature_cols)))
    missing: list[tuple[int, int]] = []
    for r, row in enumerate(rows):
        for out_c, c in enumerate(feature_cols):
            token = row[c].strip()
            if token == schema.missing_token:
                features[r, out_c] = np.nan
                missing.append((r, out_c))
            else:
                try:
                    features[r, out_c] = float(token)
                except ValueError:
                    raise ValueError(
                        f"{path}: row {r}, column {c}: non-numeric value {token!r}"
                    ) from None

    if missing:
        rng = np.random.default_rng(seed)
        for c in sorted({c for _, c in missing}):
            col = features[:, c]
            observed = col[np.isfinite(col)]
            if observed.size == 0:
                raise ValueError(f"{path}: column {c} has no observed values to impute from")
            lo, hi = float(observed.min()), float(observed.max())
            for r in np.flatnonzero(~np.isfinite(col)):
                features[r, c] = rng.uniform(lo, hi)

    labels = None
    label_names: tuple[str, ...] | None = None
    if label_col is not None:
        codes: dict[str, int] = {}
        labels = np.empty(n, dtype=np.int64)
        for r, row in enumerate(rows):
            labels[r] = codes.setdefault(row[label_col].strip(), len(codes))
        label_names = tuple(codes)

    note = f"{path.name}: n={n}, m={len(feature_cols)}"
    if missing:
        note += f", {len(missing)} imputed cells (seed={seed})"
    return LabeledDataset(
        features=features, labels=labels, label_names=label_names, provenance=note
    )


def write_csv(dataset: LabeledDataset, path: str | Path, delimiter: str = ",") -> None:
    """Write features at 17 significant digits, label code as final column."""
    buf = io.StringIO()
    writer = csv.writer(buf, delimiter=delimiter, lineterminator="\n")
    for r in range(dataset.n):
        row = [f"{x:.17g}" for x in dataset.features[r]]
        if dataset.labels is not None:
            row.append(str(int(dataset.labels[r])))
        writer.writerow(row)
    Path(path).write_text(buf.getvalue())


def normalize_minmax(dataset: LabeledDataset) -> LabeledDataset:
    """Affinely map every feature column onto [0, 1]; constant columns to 0."""
    lo = dataset.features.min(axis=0)
    hi = dataset.features.max(axis=0)
    span = hi - lo
    span[span == 0.0] = 1.0
    scaled = (dataset.features - lo) / span
    return replace(
        dataset, features=scaled, provenance=dataset.provenance + ", minmax-normalized"
    )


def synth_blobs(
    centers, points_per_blob: int, radius: float, seed: int = 0
) -> LabeledDataset:
    """Isotropic Gaussian blobs (std = radius) around the given centers."""
    centers = np.atleast_2d(np.asarray(centers, dtype=float))
    if centers.shape[0] < 1:
        raise ValueError("need at least one blob center")
    if not radius > 0:
        raise ValueError(f"radius must be positive, got {radius}")
    if points_per_blob < 1:
        raise ValueError(f"points_per_blob must be >= 1, got {points_per_blob}")

    rng = np.random.default_rng(seed)
    features = np.concatenate(
        [
            rng.normal(loc=c, scale=radius, size=(points_per_blob, centers.shape[1]))
            for c in centers
        ]
    )
    labels = np.repeat(np.arange(centers.shape[0], dtype=np.int64), points_per_blob)
    note = (
        f"synthetic blobs: {centers.shape[0]} centers x {points_per_blob} points, "
        f"radius={radius}, seed={seed}"
    )
    return LabeledDataset(
        features=features,
        labels=labels,
        label_names=tuple(str(b) for b in range(centers.shape[0])),
        provenance=note,
    )


def load_benchmark_dataset(
    directory: str | Path, name: str, seed: int = 0
) -> LabeledDataset:
    """Load one canonical benchmark file (see BENCHMARK_FILES) by name."""
    if name not in BENCHMARK_FILES:
        raise ValueError(
            f"unknown dataset {name!r}; known: {', '.join(sorted(BENCHMARK_FILES))}"
        )
    path = Path(directory) / BENCHMARK_FILES[name]
    return load_csv(path, CsvSchema(label_col=-1), seed=seed)
