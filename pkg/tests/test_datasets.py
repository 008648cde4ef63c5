from pathlib import Path

import numpy as np
import pytest

from qwclust.datasets import (
    CsvSchema,
    LabeledDataset,
    load_benchmark_dataset,
    load_csv,
    normalize_minmax,
    synth_blobs,
    write_csv,
)

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture
def tmp_csv(tmp_path):
    def write(text, name="data.csv"):
        path = tmp_path / name
        path.write_text(text)
        return path

    return write


class TestLoadCsv:
    def test_basic_with_labels(self, tmp_csv):
        path = tmp_csv("1,2,a\n3,4,b\n5,6,a\n")
        ds = load_csv(path, CsvSchema(label_col=2))
        assert ds.features.tolist() == [[1, 2], [3, 4], [5, 6]]
        assert ds.labels.tolist() == [0, 1, 0]  # coded by first appearance
        assert ds.label_names == ("a", "b")
        assert ds.n_classes == 2

    def test_negative_label_col(self, tmp_csv):
        path = tmp_csv("1,2,x\n3,4,y\n")
        ds = load_csv(path, CsvSchema(label_col=-1))
        assert ds.n_features == 2 and ds.labels.tolist() == [0, 1]

    def test_unlabeled(self, tmp_csv):
        ds = load_csv(tmp_csv("1,2\n3,4\n"))
        assert ds.labels is None and ds.n_classes == 0

    def test_header_skipped(self, tmp_csv):
        path = tmp_csv("alpha,beta\n1,2\n3,4\n")
        ds = load_csv(path, CsvSchema(header=True))
        assert ds.n == 2

    def test_iris_file(self):
        ds = load_benchmark_dataset(DATA_DIR, "iris")
        assert ds.n == 150 and ds.n_features == 4 and ds.n_classes == 3

    def test_missing_imputed_within_range_and_deterministic(self, tmp_csv):
        text = "1,10,p\n?,20,q\n3,?,p\n5,40,q\n"
        path = tmp_csv(text)
        schema = CsvSchema(label_col=2)
        a = load_csv(path, schema, seed=7)
        b = load_csv(path, schema, seed=7)
        c = load_csv(path, schema, seed=8)
        assert np.array_equal(a.features, b.features)
        assert not np.array_equal(a.features, c.features)
        assert np.all(np.isfinite(a.features))
        assert 1.0 <= a.features[1, 0] <= 5.0
        assert 10.0 <= a.features[2, 1] <= 40.0

    def test_non_numeric_cell_names_position(self, tmp_csv):
        path = tmp_csv("1,2\n3,oops\n")
        with pytest.raises(ValueError, match=r"row 1, column 1.*'oops'"):
            load_csv(path)

    def test_ragged_rows_rejected(self, tmp_csv):
        path = tmp_csv("1,2\n3\n")
        with pytest.raises(ValueError, match="row 1"):
            load_csv(path)

    def test_label_col_out_of_range(self, tmp_csv):
        path = tmp_csv("1,2\n")
        with pytest.raises(ValueError, match="label column"):
            load_csv(path, CsvSchema(label_col=5))

    def test_all_missing_column_rejected(self, tmp_csv):
        path = tmp_csv("?,1\n?,2\n")
        with pytest.raises(ValueError, match="column 0"):
            load_csv(path)

    def test_empty_file_rejected(self, tmp_csv):
        with pytest.raises(ValueError, match="no data rows"):
            load_csv(tmp_csv(""))

    def test_unknown_benchmark_name(self):
        with pytest.raises(ValueError, match="unknown dataset"):
            load_benchmark_dataset(DATA_DIR, "mnist")


class TestRoundTrip:
    def test_load_write_reload_identical(self, tmp_path):
        rng = np.random.default_rng(0)
        source = tmp_path / "source.csv"
        lines = []
        for row in rng.normal(size=(12, 3)) * 1e3:
            label = rng.choice(["spam", "ham", "eggs"])
            lines.append(",".join(f"{x:.17g}" for x in row) + f",{label}")
        source.write_text("\n".join(lines) + "\n")

        first = load_csv(source, CsvSchema(label_col=-1))
        rewritten = tmp_path / "rewritten.csv"
        write_csv(first, rewritten)
        second = load_csv(rewritten, CsvSchema(label_col=-1))
        assert np.array_equal(first.features, second.features)
        assert np.array_equal(first.labels, second.labels)


class TestNormalizeMinmax:
    def test_affine_endpoints(self):
        ds = LabeledDataset(
            features=np.array([[2.0], [4.0], [6.0]]),
            labels=None, label_names=None, provenance="t",
        )
        assert normalize_minmax(ds).features.ravel().tolist() == [0.0, 0.5, 1.0]

    def test_constant_column_to_zero(self):
        ds = LabeledDataset(
            features=np.array([[7.0, 1.0], [7.0, 2.0], [7.0, 3.0]]),
            labels=None, label_names=None, provenance="t",
        )
        out = normalize_minmax(ds)
        assert out.features[:, 0].tolist() == [0.0, 0.0, 0.0]

    def test_idempotent(self):
        rng = np.random.default_rng(1)
        ds = LabeledDataset(
            features=rng.normal(size=(20, 4)),
            labels=None, label_names=None, provenance="t",
        )
        once = normalize_minmax(ds)
        twice = normalize_minmax(once)
        assert np.array_equal(once.features, twice.features)

    def test_labels_preserved(self):
        ds = LabeledDataset(
            features=np.array([[1.0], [2.0]]),
            labels=np.array([0, 1]), label_names=("a", "b"), provenance="t",
        )
        out = normalize_minmax(ds)
        assert np.array_equal(out.labels, ds.labels)


class TestSynthBlobs:
    def test_counts_and_labels(self):
        ds = synth_blobs([[0.0, 0.0]], 10, 1.0, seed=0)
        assert ds.n == 10 and ds.labels.tolist() == [0] * 10

    def test_deterministic(self):
        a = synth_blobs([[0, 0], [5, 5]], 12, 0.5, seed=3)
        b = synth_blobs([[0, 0], [5, 5]], 12, 0.5, seed=3)
        assert np.array_equal(a.features, b.features)

    def test_nearest_center_recovers_labels(self):
        centers = np.array([[0.0, 0.0], [20.0, 0.0], [0.0, 20.0]])
        ds = synth_blobs(centers, 25, 1.0, seed=5)
        dist = np.linalg.norm(ds.features[:, None, :] - centers[None], axis=2)
        assert np.array_equal(dist.argmin(axis=1), ds.labels)

    def test_validation(self):
        with pytest.raises(ValueError):
            synth_blobs([[0.0]], 5, 0.0)
        with pytest.raises(ValueError):
            synth_blobs([[0.0]], 0, 1.0)
