import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qwclust.affinity import (
    bias_map,
    degrees,
    distance_floor,
    knn_neighbor_sets,
    pairwise_distances,
    snapshot,
    transition_row,
    transition_table,
)


def cloud_strategy(max_n=12, max_m=3):
    return st.integers(3, max_n).flatmap(
        lambda n: st.integers(1, max_m).flatmap(
            lambda m: st.lists(
                st.lists(st.floats(-10, 10, allow_nan=False), min_size=m, max_size=m),
                min_size=n,
                max_size=n,
            ).map(np.array)
        )
    )


class TestPairwiseDistances:
    def test_single_point(self):
        d = pairwise_distances(np.array([[1.0, 2.0]]))
        assert d.shape == (1, 1) and d[0, 0] == 0.0

    def test_three_four_five(self):
        d = pairwise_distances(np.array([[0.0, 0.0], [3.0, 4.0]]))
        assert d[0, 1] == 5.0 and d[1, 0] == 5.0

    def test_matches_double_loop(self):
        rng = np.random.default_rng(11)
        pts = rng.normal(size=(5, 3))
        d = pairwise_distances(pts)
        for i in range(5):
            for j in range(5):
                ref = math.sqrt(sum((pts[i, f] - pts[j, f]) ** 2 for f in range(3)))
                assert abs(d[i, j] - ref) < 1e-12

    def test_errors(self):
        with pytest.raises(ValueError):
            pairwise_distances(np.empty((0, 2)))
        with pytest.raises(ValueError):
            pairwise_distances(np.array([[0.0], [float("nan")]]))

    @given(cloud_strategy())
    def test_symmetry_and_zero_diagonal(self, pts):
        d = pairwise_distances(pts)
        assert np.array_equal(d, d.T)
        assert np.all(np.diag(d) == 0.0)
        assert np.all(np.isfinite(d))


class TestKnnNeighborSets:
    def test_line_example(self):
        # 1-D points {0, 1, 3}
        d = pairwise_distances(np.array([[0.0], [1.0], [3.0]]))
        nb = knn_neighbor_sets(d, 1)
        assert nb.tolist() == [[1], [0], [1]]

    def test_tie_takes_lower_index(self):
        d = np.ones((3, 3))
        np.fill_diagonal(d, 0.0)
        nb = knn_neighbor_sets(d, 1)
        assert nb.tolist() == [[1], [0], [0]]

    def test_k_at_least_n_takes_all_others(self):
        d = pairwise_distances(np.array([[0.0], [1.0], [3.0]]))
        nb = knn_neighbor_sets(d, 10)
        assert nb.shape == (3, 2)
        for i in range(3):
            assert i not in nb[i]

    def test_distances_nondecreasing_along_rows(self):
        rng = np.random.default_rng(5)
        pts = rng.normal(size=(20, 2))
        d = pairwise_distances(pts)
        nb = knn_neighbor_sets(d, 6)
        for i in range(20):
            row = d[i, nb[i]]
            assert np.all(np.diff(row) >= 0)

    def test_k_validation(self):
        with pytest.raises(ValueError):
            knn_neighbor_sets(np.zeros((2, 2)), 0)


class TestDegrees:
    def test_line_example(self):
        d = pairwise_distances(np.array([[0.0], [1.0], [3.0]]))
        nb = knn_neighbor_sets(d, 1)
        assert degrees(nb).tolist() == [1, 2, 0]

    def test_complete_graph(self):
        d = pairwise_distances(np.arange(5.0).reshape(-1, 1))
        nb = knn_neighbor_sets(d, 4)
        assert degrees(nb).tolist() == [4] * 5

    def test_two_mutual_pairs(self):
        pts = np.array([[0.0], [0.1], [10.0], [10.1]])
        nb = knn_neighbor_sets(pairwise_distances(pts), 1)
        assert degrees(nb).tolist() == [1, 1, 1, 1]

    @given(cloud_strategy(), st.integers(1, 6))
    def test_total_degree(self, pts, k):
        nb = knn_neighbor_sets(pairwise_distances(pts), k)
        n = pts.shape[0]
        assert degrees(nb).sum() == n * min(k, n - 1)


class TestTransitionRow:
    def test_symmetric_neighbors_split_evenly(self):
        pts = np.array([[0.0], [-1.0], [1.0]])
        snap = snapshot(pts, 2)
        row = transition_row(0, snap.dist, snap.dist, snap.degree, snap.degree, snap.neighbors)
        assert np.allclose(row.probs, [0.5, 0.5], atol=1e-12)
        assert row.chosen == 1  # tie resolved to the lower point index

    def test_matches_term_by_term_evaluation(self):
        # four points that have moved since t=0, unequal degrees and distances
        init_pts = np.array([[0.0, 0.0], [2.0, 0.0], [1.0, 2.0], [4.0, 1.0]])
        now_pts = np.array([[0.2, 0.1], [1.5, 0.2], [1.2, 1.4], [3.1, 0.9]])
        k = 2
        snap_now = snapshot(now_pts, k)
        snap_init = snapshot(init_pts, k)
        floor = distance_floor(snap_init.dist)

        for i in range(4):
            row = transition_row(
                i, snap_now.dist, snap_init.dist,
                snap_now.degree, snap_init.degree, snap_now.neighbors,
            )
            nbrs = snap_now.neighbors[i]
            sum_now = sum(snap_now.degree[j] for j in nbrs)
            sum_init = sum(snap_init.degree[j] for j in nbrs)
            affinities = []
            for j in nbrs:
                share_now = snap_now.degree[j] / sum_now if sum_now else 0.0
                share_init = snap_init.degree[j] / sum_init if sum_init else 0.0
                dn = max(snap_now.dist[i, j], floor)
                d0 = max(snap_init.dist[i, j], floor)
                affinities.append(share_now * share_init / (dn * d0))
            total = sum(affinities)
            expected = [a / total for a in affinities]
            assert np.allclose(row.probs, expected, atol=1e-12), i
            best = max(range(len(nbrs)), key=lambda s: (expected[s], -nbrs[s]))
            assert row.chosen == nbrs[best]

    def test_scale_invariance_of_current_distances(self):
        rng = np.random.default_rng(3)
        pts = rng.normal(size=(8, 2))
        snap_init = snapshot(pts, 3)
        now = rng.normal(size=(8, 2))
        snap_now = snapshot(now, 3)
        row = transition_row(
            2, snap_now.dist, snap_init.dist, snap_now.degree, snap_init.degree, snap_now.neighbors
        )
        scaled = snapshot(now * 7.5, 3)
        assert np.array_equal(scaled.neighbors, snap_now.neighbors)
        row_scaled = transition_row(
            2, scaled.dist, snap_init.dist, scaled.degree, snap_init.degree, scaled.neighbors
        )
        assert np.allclose(row.probs, row_scaled.probs, atol=1e-12)
        assert row.chosen == row_scaled.chosen

    def test_chosen_invariant_under_increasing_transform(self):
        rng = np.random.default_rng(4)
        pts = rng.normal(size=(9, 2))
        snap = snapshot(pts, 4)
        row = transition_row(1, snap.dist, snap.dist, snap.degree, snap.degree, snap.neighbors)
        transformed = np.exp(3.0 * row.probs)  # strictly increasing
        best = min(
            ((-transformed[s], row.neighbors[s]) for s in range(len(row.neighbors)))
        )[1]
        assert best == row.chosen

    def test_coincident_points_clamped_not_nan(self):
        pts = np.array([[0.0, 0.0], [0.0, 0.0], [1.0, 1.0]])
        snap = snapshot(pts, 2)
        row = transition_row(0, snap.dist, snap.dist, snap.degree, snap.degree, snap.neighbors)
        assert np.all(np.isfinite(row.probs))
        assert abs(row.probs.sum() - 1.0) < 1e-9

    def test_zero_degree_fallback_uniform(self):
        dist = pairwise_distances(np.array([[0.0], [1.0], [2.5]]))
        neighbors = knn_neighbor_sets(dist, 2)
        zero_deg = np.zeros(3, dtype=np.int64)
        probs, _ = transition_table(dist, dist, zero_deg, zero_deg, neighbors, 1e-12)
        assert np.allclose(probs, 0.5, atol=1e-12)

    @given(cloud_strategy(), st.integers(1, 5))
    def test_rows_normalized(self, pts, k):
        snap = snapshot(pts, k)
        probs, chosen = transition_table(
            snap.dist, snap.dist, snap.degree, snap.degree, snap.neighbors,
            distance_floor(snap.dist),
        )
        assert np.all(probs >= 0.0)
        assert np.allclose(probs.sum(axis=1), 1.0, atol=1e-9)
        n = pts.shape[0]
        assert np.all((chosen >= 0) & (chosen < n))

    def test_positive_probabilities_when_degrees_positive(self):
        pts = np.arange(6.0).reshape(-1, 1)
        snap = snapshot(pts, 2)
        assert np.all(snap.degree > 0)
        probs, _ = transition_table(
            snap.dist, snap.dist, snap.degree, snap.degree, snap.neighbors,
            distance_floor(snap.dist),
        )
        assert np.all(probs > 0.0)


class TestBiasMap:
    def test_endpoints_and_midpoint(self):
        assert bias_map(0.0) == 0.5
        assert bias_map(1.0) == 1.0
        assert bias_map(0.6) == pytest.approx(0.8, abs=1e-15)

    def test_domain(self):
        with pytest.raises(ValueError):
            bias_map(-0.01)
        with pytest.raises(ValueError):
            bias_map(1.01)

    def test_array_input(self):
        out = bias_map(np.array([0.0, 0.5, 1.0]))
        assert np.array_equal(out, [0.5, 0.75, 1.0])

    @given(st.floats(0, 1, allow_nan=False), st.floats(0, 1, allow_nan=False))
    def test_monotone(self, p1, p2):
        if p1 < p2:
            assert bias_map(p1) < bias_map(p2)
