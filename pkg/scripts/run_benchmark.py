#!/usr/bin/env python3
"""Full benchmark: best sweep accuracy per dataset and variant, next to
the reference figures.

Equivalent to ``qwclust bench --format text`` with the default grid, but
prints progress per dataset since the full grid takes minutes each.

Usage: python scripts/run_benchmark.py [--datasets-dir data] [--datasets iris ...]
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from qwclust.datasets import BENCHMARK_FILES, CsvSchema, load_csv
from qwclust.evaluation import (
    SweepGrid,
    benchmark_report_text,
    benchmark_table,
)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--datasets-dir", default="data")
    parser.add_argument("--datasets", nargs="*", default=None)
    parser.add_argument("--variants", nargs="*", choices=("scms", "mcms"),
                        default=["scms", "mcms"])
    args = parser.parse_args(argv)

    directory = Path(args.datasets_dir)
    names = args.datasets or sorted(BENCHMARK_FILES)
    available = [n for n in names if (directory / BENCHMARK_FILES[n]).exists()]
    skipped = sorted(set(names) - set(available))
    if skipped:
        print(
            f"skipping (file not present): {', '.join(skipped)} "
            "- see scripts/fetch_datasets.py",
            file=sys.stderr,
        )
    if not available:
        print("no dataset files found", file=sys.stderr)
        return 1

    grid = SweepGrid()
    for name in available:
        dataset = load_csv(
            directory / BENCHMARK_FILES[name], CsvSchema(label_col=-1), seed=0
        )
        start = time.perf_counter()
        report = benchmark_table([(name, dataset)], grid, variants=args.variants)
        elapsed = time.perf_counter() - start
        print(f"# {name} ({dataset.n} points, {elapsed:.0f}s)")
        print(benchmark_report_text(report), end="")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
