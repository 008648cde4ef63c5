"""Clustering by coined quantum-walk particle dynamics.

Data points are particles that repeatedly walk toward affinity-selected
neighbors on an evolving k-nearest-neighbor graph; each per-dimension
move is the measured outcome of an exactly simulated one-dimensional
coined quantum walk. Points coalesce into clusters, which are read off
as connected components under a linkage radius.
"""

__version__ = "0.1.0"

from .affinity import bias_map, knn_neighbor_sets, pairwise_distances, transition_row
from .datasets import CsvSchema, LabeledDataset, load_csv, normalize_minmax, synth_blobs
from .engine import AlgoConfig, ClusterResult, extract_clusters, merge_clusters, run, step
from .evaluation import accuracy, benchmark_table, sweep
from .walk import (
    WalkState,
    biased_coin,
    distribution,
    hadamard_walk,
    mcms_walk,
    measure,
    scms_walk,
)

__all__ = [
    "__version__",
    "AlgoConfig",
    "ClusterResult",
    "CsvSchema",
    "LabeledDataset",
    "WalkState",
    "accuracy",
    "benchmark_table",
    "bias_map",
    "biased_coin",
    "distribution",
    "extract_clusters",
    "hadamard_walk",
    "knn_neighbor_sets",
    "load_csv",
    "mcms_walk",
    "measure",
    "merge_clusters",
    "normalize_minmax",
    "pairwise_distances",
    "run",
    "scms_walk",
    "step",
    "sweep",
    "synth_blobs",
    "transition_row",
]
