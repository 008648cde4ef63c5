"""Distance matrices, k-nearest-neighbor structure, and walk-bias rows.

Each point is steered by a probability row over its k nearest neighbors.
The unnormalized affinity toward neighbor j combines how well-connected
j is now and initially (its share of in-degree over the neighborhood)
with how close it is now and initially:

    affinity(i, j) = (deg_now(j)/sum_deg_now) * (deg_init(j)/sum_deg_init)
                     / (dist_now(i, j) * dist_init(i, j))

where both degree sums run over the current neighbor set of i. Rows are
normalized to probabilities, and the neighbor with the largest
probability is the point's steering target.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

__all__ = [
    "AffinitySnapshot",
    "TransitionRow",
    "pairwise_distances",
    "knn_neighbor_sets",
    "degrees",
    "snapshot",
    "distance_floor",
    "transition_table",
    "transition_row",
    "bias_map",
]


@dataclass(frozen=True, eq=False)
class AffinitySnapshot:
    """Distance matrix, neighbor index table, and in-degree vector of a cloud."""

    dist: np.ndarray  # (n, n) symmetric, zero diagonal
    neighbors: np.ndarray  # (n, min(k, n-1)) indices, nearest first
    degree: np.ndarray  # (n,) in-degree of the directed k-NN graph


@dataclass(frozen=True, eq=False)
class TransitionRow:
    """Steering probabilities of one point over its current neighbors."""

    point: int
    chosen: int  # neighbor with the largest probability (ties: lowest index)
    neighbors: np.ndarray
    probs: np.ndarray


def pairwise_distances(points: np.ndarray) -> np.ndarray:
    """Euclidean distance matrix of an (n, m) point cloud."""
    points = np.asarray(points, dtype=float)
    if points.ndim != 2 or points.shape[0] == 0:
        raise ValueError("point cloud must be a nonempty (n, m) array")
    if not np.all(np.isfinite(points)):
        raise ValueError("point coordinates must be finite")
    d = cdist(points, points)
    np.fill_diagonal(d, 0.0)
    return d


def knn_neighbor_sets(dist: np.ndarray, k: int) -> np.ndarray:
    """Indices of the min(k, n-1) nearest other points per row, nearest first.

    Equal distances resolve to the lower point index, which makes runs
    reproducible across platforms.
    """
    if k < 1:
        raise ValueError(f"neighbor count must be >= 1, got {k}")
    n = dist.shape[0]
    kk = min(k, n - 1)
    masked = dist.copy()
    np.fill_diagonal(masked, np.inf)
    order = np.argsort(masked, axis=1, kind="stable")
    return order[:, :kk]


def degrees(neighbors: np.ndarray) -> np.ndarray:
    """In-degree per point: how many neighbor lists contain it."""
    n = neighbors.shape[0]
    return np.bincount(neighbors.ravel(), minlength=n).astype(np.int64)


def snapshot(points: np.ndarray, k: int) -> AffinitySnapshot:
    """Distance matrix, neighbor sets, and degrees of a cloud in one pass."""
    d = pairwise_distances(points)
    nb = knn_neighbor_sets(d, k)
    return AffinitySnapshot(dist=d, neighbors=nb, degree=degrees(nb))


def distance_floor(dist_init: np.ndarray) -> float:
    """Smallest distance admitted in affinity denominators.

    1e-12 times the mean initial pairwise distance; coincident points
    would otherwise divide by zero. Falls back to 1e-12 when the whole
    cloud is coincident.
    """
    n = dist_init.shape[0]
    if n < 2:
        return 1e-12
    mean = float(dist_init.sum()) / (n * (n - 1))
    return 1e-12 * mean if mean > 0.0 else 1e-12


def transition_table(
    dist_now: np.ndarray,
    dist_init: np.ndarray,
    deg_now: np.ndarray,
    deg_init: np.ndarray,
    neighbors: np.ndarray,
    floor: float,
) -> tuple[np.ndarray, np.ndarray]:
    """Steering probabilities and chosen neighbor for every point at once.

    Returns ``(probs, chosen)`` where probs[i, s] is the probability of
    neighbors[i, s] and chosen[i] is the highest-probability neighbor
    index (ties to the lowest point index). Rows whose affinities all
    vanish fall back to the uniform row.
    """
    kk = neighbors.shape[1]
    if kk == 0:
        raise ValueError("every point needs at least one neighbor")
    sentinel = dist_now.shape[1]  # larger than any point index

    dn = np.maximum(np.take_along_axis(dist_now, neighbors, axis=1), floor)
    d0 = np.maximum(np.take_along_axis(dist_init, neighbors, axis=1), floor)
    gn = deg_now[neighbors].astype(float)
    g0 = deg_init[neighbors].astype(float)

    sum_gn = gn.sum(axis=1, keepdims=True)
    sum_g0 = g0.sum(axis=1, keepdims=True)
    share_now = np.divide(gn, sum_gn, out=np.zeros_like(gn), where=sum_gn > 0)
    share_init = np.divide(g0, sum_g0, out=np.zeros_like(g0), where=sum_g0 > 0)

    affinity = share_now * share_init / (dn * d0)
    total = affinity.sum(axis=1, keepdims=True)
    probs = np.divide(
        affinity, total, out=np.full_like(affinity, 1.0 / kk), where=total > 0
    )

    row_max = probs.max(axis=1, keepdims=True)
    chosen = np.where(probs == row_max, neighbors, sentinel).min(axis=1)
    return probs, chosen


def transition_row(
    i: int,
    dist_now: np.ndarray,
    dist_init: np.ndarray,
    deg_now: np.ndarray,
    deg_init: np.ndarray,
    neighbors: np.ndarray,
) -> TransitionRow:
    """Steering row of a single point; see ``transition_table``."""
    probs, chosen = transition_table(
        dist_now[i : i + 1],
        dist_init[i : i + 1],
        deg_now,
        deg_init,
        neighbors[i : i + 1],
        distance_floor(dist_init),
    )
    return TransitionRow(
        point=i,
        chosen=int(chosen[0]),
        neighbors=neighbors[i].copy(),
        probs=probs[0],
    )


def bias_map(p):
    """Affine map from a probability in [0, 1] to a coin bias in [0.5, 1].

    Strictly increasing with bias_map(0) = 0.5 and bias_map(1) = 1.
    Accepts scalars or arrays.
    """
    arr = np.asarray(p, dtype=float)
    if not np.all((arr >= 0.0) & (arr <= 1.0)):
        raise ValueError(f"probability outside [0, 1]: {p}")
    out = 0.5 * (1.0 + arr)
    return float(out) if np.isscalar(p) or arr.ndim == 0 else out
