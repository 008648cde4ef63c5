#!/usr/bin/env python3
"""Cluster count versus neighborhood size on synthetic Gaussian blobs.

Runs the clusterer over a range of k on a three-blob cloud and prints
the extracted cluster count per (k, seed) with per-k medians: the count
falls toward the true blob count as k grows.

Usage: python scripts/blob_k_trend.py [--variant mcms] [--seeds 5]
"""

from __future__ import annotations

import argparse

import numpy as np

from qwclust.datasets import synth_blobs
from qwclust.engine import AlgoConfig, run

CENTERS = [[0.0, 0.0], [20.0, 0.0], [0.0, 20.0]]


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--variant", choices=("scms", "mcms"), default="mcms")
    parser.add_argument("--points-per-blob", type=int, default=30)
    parser.add_argument("--radius", type=float, default=1.0)
    parser.add_argument("--seeds", type=int, default=5)
    parser.add_argument("--ks", type=lambda s: [int(x) for x in s.split(",")],
                        default=[2, 4, 8, 12, 16, 20, 24])
    args = parser.parse_args(argv)

    print(f"{'k':>4} {'counts':<24} {'median':>6}")
    for k in args.ks:
        counts = []
        for seed in range(args.seeds):
            ds = synth_blobs(CENTERS, args.points_per_blob, args.radius, seed=seed)
            result = run(
                ds.features,
                AlgoConfig(variant=args.variant, k=k, r=6, seed=seed),
            )
            counts.append(result.n_clusters)
        print(f"{k:>4} {str(counts):<24} {np.median(counts):>6.1f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
