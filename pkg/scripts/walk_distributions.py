#!/usr/bin/env python3
"""Dump the walk distributions behind the standard diagnostic plots.

Writes CSV files into the output directory:

- hadamard_100.csv: the 100-step balanced walk next to the classical
  binomial random walk, for the quantum-vs-classical comparison plot.
- biased_unit_t{30,60,100}.csv: the 0.8-biased unit-step walk at three
  durations, showing the mode drifting toward the right edge while the
  peak flattens.
- multi_coin_unit.csv: a six-coin unit-step walk with mixed biases.

Usage: python scripts/walk_distributions.py [--out results/walks]
"""

from __future__ import annotations

import argparse
from math import comb
from pathlib import Path

from qwclust.walk import (
    distribution,
    distribution_csv,
    hadamard_walk,
    unit_biased_walk,
    unit_multi_coin_walk,
)


def classical_walk_csv(steps: int) -> str:
    lines = ["position,probability"]
    for heads in range(steps + 1):
        position = 2 * heads - steps
        probability = comb(steps, heads) / 2.0**steps
        lines.append(f"{position:.17g},{probability:.17g}")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="results/walks")
    args = parser.parse_args(argv)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    (out / "hadamard_100.csv").write_text(distribution_csv(hadamard_walk(100)))
    (out / "classical_100.csv").write_text(classical_walk_csv(100))
    for t in (30, 60, 100):
        dist = distribution(unit_biased_walk(0.8, t))
        (out / f"biased_unit_t{t}.csv").write_text(distribution_csv(dist))
    mixed = distribution(unit_multi_coin_walk([0.95, 0.9, 0.8, 0.7, 0.6, 0.5]))
    (out / "multi_coin_unit.csv").write_text(distribution_csv(mixed))

    for name in sorted(p.name for p in out.glob("*.csv")):
        print(out / name)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
