#!/usr/bin/env python3
"""Download the six benchmark datasets from the UCI repository and write
them in the canonical form the bench command expects: comma-delimited,
no header, numeric features, class label as the last column, "?" for
missing values.

Usage: python scripts/fetch_datasets.py [--out data]

Needs network access to archive.ics.uci.edu. Files that already exist
are left alone.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
import urllib.request
from pathlib import Path

BASE = "https://archive.ics.uci.edu/ml/machine-learning-databases"

# name -> (url, indices of feature columns, index of label column)
SOURCES = {
    "soybean-small.csv": (
        f"{BASE}/soybean/soybean-small.data",
        None,  # all but the label
        -1,
    ),
    "iris.csv": (f"{BASE}/iris/iris.data", None, -1),
    "sonar.csv": (
        f"{BASE}/undocumented/connectionist-bench/sonar/sonar.all-data",
        None,
        -1,
    ),
    "glass.csv": (
        f"{BASE}/glass/glass.data",
        list(range(1, 10)),  # drop the id column
        -1,
    ),
    "ionosphere.csv": (f"{BASE}/ionosphere/ionosphere.data", None, -1),
    "breast.csv": (
        f"{BASE}/breast-cancer-wisconsin/breast-cancer-wisconsin.data",
        list(range(1, 10)),  # drop the sample id column
        -1,
    ),
}


def canonicalize(raw: str, feature_cols, label_col) -> str:
    rows = [row for row in csv.reader(io.StringIO(raw)) if row]
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    for row in rows:
        label = row[label_col].strip()
        if feature_cols is None:
            features = row[:label_col] if label_col < 0 else [
                cell for c, cell in enumerate(row) if c != label_col
            ]
        else:
            features = [row[c] for c in feature_cols]
        writer.writerow([cell.strip() for cell in features] + [label])
    return out.getvalue()


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="data", help="target directory")
    args = parser.parse_args(argv)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    failures = []
    for filename, (url, feature_cols, label_col) in SOURCES.items():
        target = out_dir / filename
        if target.exists():
            print(f"{target} already present, skipping")
            continue
        try:
            with urllib.request.urlopen(url, timeout=60) as response:
                raw = response.read().decode("utf-8")
        except OSError as exc:
            print(f"failed to fetch {url}: {exc}", file=sys.stderr)
            failures.append(filename)
            continue
        target.write_text(canonicalize(raw, feature_cols, label_col))
        print(f"wrote {target}")

    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
