"""Synchronous particle-motion clustering driven by coined quantum walks.

Every data point is a particle. Each iteration it recomputes its
k-nearest-neighbor steering row, builds a one-dimensional walk per
feature dimension toward its highest-probability neighbor, collapses the
walk, and moves by the collapsed displacement. All points read the same
time-t snapshot and their updates land simultaneously, so the result is
independent of point iteration order. The loop stops once the summed
per-iteration travel drops below a threshold, and clusters are the
connected components of the final cloud under the separating threshold
theta.

Theta also gates the motion itself: neighbors within theta already
belong to the same cluster, so they are skipped when picking walk
targets, and a point rests once its whole neighborhood lies within
theta. Without this, the inverse-distance affinity of near-coincident
neighbors diverges and freshly coalesced groups freeze instead of
continuing to gather; with it, groups smaller than the neighborhood keep
migrating toward other groups, which is what makes the final cluster
count fall as k grows.

Two variants are supported. ``scms`` (single coin, multiple steps)
builds one coin from the largest steering probability and applies it
``r`` times with step lengths shrunk by ``r``. ``mcms`` (multiple coins,
multiple steps) builds one coin per selected neighbor, taking the ``r``
largest-probability neighbors, and applies them in descending
probability order.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .affinity import (
    AffinitySnapshot,
    bias_map,
    distance_floor,
    pairwise_distances,
    snapshot,
    transition_table,
)
from .walk import mcms_walk, scms_walk

__all__ = [
    "AlgoConfig",
    "ClusterResult",
    "step",
    "run",
    "extract_clusters",
    "merge_clusters",
    "relabel_contiguous",
]

VARIANTS = ("scms", "mcms")

# Defaults relative to the mean initial pairwise distance.
EPSILON_FACTOR = 1e-3  # times n: stop once summed travel falls below
THETA_FACTOR = 0.05  # linkage radius for cluster extraction

BiasFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class AlgoConfig:
    """Run parameters; ``epsilon`` and ``theta`` default from the data scale."""

    variant: str = "mcms"
    k: int = 14
    r: int = 6
    epsilon: float | None = None
    theta: float | None = None
    seed: int = 0
    max_iter: int = 500
    target_clusters: int | None = None

    def __post_init__(self) -> None:
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.r < 1:
            raise ValueError(f"r must be >= 1, got {self.r}")
        if self.epsilon is not None and not self.epsilon > 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if self.theta is not None and not self.theta > 0:
            raise ValueError(f"theta must be positive, got {self.theta}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter}")
        if self.seed < 0:
            raise ValueError(f"seed must be >= 0, got {self.seed}")
        if self.target_clusters is not None and self.target_clusters < 1:
            raise ValueError(
                f"target_clusters must be >= 1, got {self.target_clusters}"
            )


@dataclass(frozen=True, eq=False)
class ClusterResult:
    """Final cloud, labels, and the per-iteration travel trace of a run."""

    positions: np.ndarray
    labels: np.ndarray
    iterations: int
    omega_trace: np.ndarray  # summed per-point travel, one entry per iteration
    config: AlgoConfig  # echo with epsilon/theta resolved to numbers
    seed: int

    @property
    def n_clusters(self) -> int:
        return int(self.labels.max()) + 1


def _update_point(
    i: int,
    cloud: np.ndarray,
    neighbors_i: np.ndarray,
    probs_i: np.ndarray,
    dist_i: np.ndarray,
    rest_radius: float,
    cfg: AlgoConfig,
    uniforms_i: np.ndarray,
    bias_fn: BiasFn,
) -> tuple[np.ndarray, float]:
    """New coordinates and travel of one point, reading only the snapshot.

    Neighbors within ``rest_radius`` already share the point's cluster,
    so they are no walk targets; the row is renormalized over the
    remaining neighbors. A point whose whole neighborhood is within the
    radius rests. One walk is built per point (for a unit displacement)
    and collapsed once per dimension with that dimension's pre-drawn
    uniform; the collapsed fraction scales the actual displacement
    toward the chosen neighbor. uniforms_i[j] is the draw for dimension j.
    """
    eligible = dist_i > rest_radius
    if not eligible.any():
        return cloud[i].copy(), 0.0
    neighbors_i = neighbors_i[eligible]
    probs_i = probs_i[eligible]
    total = probs_i.sum()
    if total > 0.0:
        probs_i = probs_i / total
    else:
        probs_i = np.full(len(probs_i), 1.0 / len(probs_i))

    order = np.lexsort((neighbors_i, -probs_i))
    target = int(neighbors_i[order[0]])
    if cfg.variant == "scms":
        rho = float(bias_fn(probs_i[order[0]]))
        state = scms_walk(rho, 1.0, cfg.r)
    else:
        selected = order[: min(cfg.r, len(neighbors_i))]
        etas = np.asarray(bias_fn(probs_i[selected]), dtype=float)
        state = mcms_walk(etas, 1.0)

    weights = state.probabilities()
    cum = np.cumsum(weights)
    idx = np.searchsorted(cum, uniforms_i * cum[-1], side="right")
    idx = np.minimum(idx, len(cum) - 1)
    fraction = state.positions[idx]

    delta = cloud[target] - cloud[i]
    move = delta * fraction
    return cloud[i] + move, float(np.abs(move).sum())


def _mean_pairwise(dist: np.ndarray) -> float:
    """Mean off-diagonal distance; 1.0 for degenerate (coincident) clouds."""
    n = dist.shape[0]
    if n < 2:
        return 1.0
    mean = float(dist.sum()) / (n * (n - 1))
    return mean if mean > 0.0 else 1.0


def step(
    cloud: np.ndarray,
    initial: np.ndarray,
    cfg: AlgoConfig,
    rng: np.random.Generator,
    init_snap: AffinitySnapshot | None = None,
    floor: float | None = None,
    rest_radius: float | None = None,
    bias_fn: BiasFn = bias_map,
) -> tuple[np.ndarray, np.ndarray]:
    """One synchronous update of the whole cloud.

    Returns ``(new_cloud, omegas)`` where omegas[i] is the summed
    per-dimension travel of point i. ``rng`` supplies exactly one
    uniform per (point, dimension), drawn up front so per-point work is
    order-independent. ``rest_radius`` (default: the resolved theta)
    marks neighbors that already share a cluster; see ``_update_point``.
    """
    cloud = np.asarray(cloud, dtype=float)
    initial = np.asarray(initial, dtype=float)
    if cloud.shape != initial.shape:
        raise ValueError(
            f"current and initial clouds differ in shape: {cloud.shape} vs {initial.shape}"
        )
    n, m = cloud.shape
    if init_snap is None:
        init_snap = snapshot(initial, cfg.k)
    if floor is None:
        floor = distance_floor(init_snap.dist)
    if rest_radius is None:
        rest_radius = (
            cfg.theta
            if cfg.theta is not None
            else THETA_FACTOR * _mean_pairwise(init_snap.dist)
        )

    snap = snapshot(cloud, cfg.k)
    probs, _ = transition_table(
        snap.dist, init_snap.dist, snap.degree, init_snap.degree, snap.neighbors, floor
    )
    near_dist = np.take_along_axis(snap.dist, snap.neighbors, axis=1)
    uniforms = rng.random((n, m))

    new_cloud = np.empty_like(cloud)
    omegas = np.empty(n)
    for i in range(n):
        new_cloud[i], omegas[i] = _update_point(
            i,
            cloud,
            snap.neighbors[i],
            probs[i],
            near_dist[i],
            rest_radius,
            cfg,
            uniforms[i],
            bias_fn,
        )

    bad = ~np.isfinite(new_cloud)
    if bad.any():
        i, j = np.argwhere(bad)[0]
        raise RuntimeError(f"non-finite update for point {i}, dimension {j}")
    return new_cloud, omegas


def run(
    data: np.ndarray, cfg: AlgoConfig, bias_fn: BiasFn = bias_map
) -> ClusterResult:
    """Iterate synchronous updates until converged, then extract clusters.

    Stops when the summed travel of one iteration falls below epsilon or
    after max_iter iterations. When ``target_clusters`` is set and the
    extraction yields more clusters, smallest-into-nearest merging
    reduces the count. Labels are contiguous ids ordered by each
    cluster's lowest point index.
    """
    points = np.asarray(data, dtype=float)
    if points.ndim != 2 or points.shape[0] < 2:
        raise ValueError("need a (n, m) cloud with n >= 2")

    init_snap = snapshot(points, cfg.k)
    n = points.shape[0]
    scale = _mean_pairwise(init_snap.dist)
    epsilon = cfg.epsilon if cfg.epsilon is not None else EPSILON_FACTOR * n * scale
    theta = cfg.theta if cfg.theta is not None else THETA_FACTOR * scale
    floor = distance_floor(init_snap.dist)

    cloud = points.copy()
    trace: list[float] = []
    for t in range(cfg.max_iter):
        rng = np.random.default_rng(np.random.SeedSequence((cfg.seed, t)))
        cloud, omegas = step(
            cloud,
            points,
            cfg,
            rng,
            init_snap=init_snap,
            floor=floor,
            rest_radius=theta,
            bias_fn=bias_fn,
        )
        trace.append(float(omegas.sum()))
        if trace[-1] < epsilon:
            break

    labels = extract_clusters(cloud, theta)
    if cfg.target_clusters is not None and labels.max() + 1 > cfg.target_clusters:
        labels = merge_clusters(labels, cloud, cfg.target_clusters)
        labels = relabel_contiguous(labels)

    resolved = dataclasses.replace(cfg, epsilon=epsilon, theta=theta)
    return ClusterResult(
        positions=cloud,
        labels=labels,
        iterations=len(trace),
        omega_trace=np.array(trace),
        config=resolved,
        seed=cfg.seed,
    )


def extract_clusters(positions: np.ndarray, theta: float) -> np.ndarray:
    """Connected components linking point pairs at distance <= theta.

    Component ids are contiguous from 0, ordered by each component's
    lowest point index.
    """
    if not theta > 0:
        raise ValueError(f"theta must be positive, got {theta}")
    d = pairwise_distances(np.asarray(positions, dtype=float))
    _, raw = connected_components(csr_matrix(d <= theta), directed=False)
    return relabel_contiguous(raw)


def merge_clusters(
    labels: np.ndarray, positions: np.ndarray, target: int
) -> np.ndarray:
    """Fold the smallest cluster into its nearest-centroid cluster until
    ``target`` remain.

    Centroids are recomputed after every merge. Size ties pick the lower
    cluster id to merge; centroid-distance ties pick the lower id to
    merge into. Surviving ids are left untouched, so the result may have
    gaps; only points of an absorbed cluster are relabeled.
    """
    if target < 1:
        raise ValueError(f"target must be >= 1, got {target}")
    labels = np.asarray(labels).copy()
    positions = np.asarray(positions, dtype=float)
    ids = sorted(int(c) for c in np.unique(labels))
    if target > len(ids):
        raise ValueError(f"target {target} exceeds current cluster count {len(ids)}")

    while len(ids) > target:
        sizes = {c: int(np.sum(labels == c)) for c in ids}
        smallest = min(ids, key=lambda c: (sizes[c], c))
        centroids = {c: positions[labels == c].mean(axis=0) for c in ids}
        absorber = min(
            (c for c in ids if c != smallest),
            key=lambda c: (
                float(np.linalg.norm(centroids[c] - centroids[smallest])),
                c,
            ),
        )
        labels[labels == smallest] = absorber
        ids.remove(smallest)
    return labels


def relabel_contiguous(labels: np.ndarray) -> np.ndarray:
    """Rewrite labels as 0..C-1 in order of first appearance."""
    labels = np.asarray(labels)
    seen: dict[int, int] = {}
    out = np.empty(len(labels), dtype=np.int64)
    for idx, lab in enumerate(labels):
        out[idx] = seen.setdefault(int(lab), len(seen))
    return out
