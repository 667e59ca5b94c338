"""Tests for CSV loading, rank computation, and min-max scaling."""

import numpy as np
import pytest

from nncorr.dataset import Sample, compute_ranks, load_csv, minmax_scale
from nncorr.errors import (
    InputError,
    InsufficientRowsError,
    MissingFileError,
    NoCovariateColumnsError,
    NonFiniteInputError,
    NonNumericCellError,
)


def _write(tmp_path, text, name="data.csv"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


# ---------------------------------------------------------------------------
# load_csv


def test_load_csv_with_header(tmp_path):
    path = _write(tmp_path, "x1,x2,y\n0.0,1.0,2.0\n3.0,4.0,5.0\n")
    s = load_csv(path)
    assert s.n == 2 and s.d == 2
    np.testing.assert_array_equal(s.x, [[0.0, 1.0], [3.0, 4.0]])
    np.testing.assert_array_equal(s.y, [2.0, 5.0])


def test_load_csv_without_header(tmp_path):
    path = _write(tmp_path, "0.0,1.0,2.0\n3.0,4.0,5.0\n")
    s = load_csv(path)
    assert s.n == 2 and s.d == 2
    np.testing.assert_array_equal(s.y, [2.0, 5.0])


def test_load_csv_y_column_index(tmp_path):
    path = _write(tmp_path, "2.0,0.0,1.0\n5.0,3.0,4.0\n")
    s = load_csv(path, y_column=0)
    np.testing.assert_array_equal(s.y, [2.0, 5.0])
    np.testing.assert_array_equal(s.x, [[0.0, 1.0], [3.0, 4.0]])


def test_load_csv_y_column_matches_reordered_file(tmp_path):
    # The same data with the response moved to the front must load identically.
    a = load_csv(_write(tmp_path, "1.0,2.0,9.0\n3.0,4.0,8.0\n", "a.csv"))
    b = load_csv(_write(tmp_path, "9.0,1.0,2.0\n8.0,3.0,4.0\n", "b.csv"), y_column=0)
    np.testing.assert_array_equal(a.x, b.x)
    np.testing.assert_array_equal(a.y, b.y)


def test_load_csv_missing_file(tmp_path):
    with pytest.raises(MissingFileError):
        load_csv(tmp_path / "absent.csv")


def test_load_csv_non_numeric_cell(tmp_path):
    path = _write(tmp_path, "1.0,2.0\n3.0,oops\n")
    with pytest.raises(NonNumericCellError):
        load_csv(path)


def test_load_csv_nan_cell_rejected(tmp_path):
    path = _write(tmp_path, "1.0,2.0\n3.0,nan\n")
    with pytest.raises(NonNumericCellError):
        load_csv(path)


def test_load_csv_single_data_row(tmp_path):
    path = _write(tmp_path, "x,y\n1.0,2.0\n")
    with pytest.raises(InsufficientRowsError):
        load_csv(path)


def test_load_csv_empty_file(tmp_path):
    with pytest.raises(InsufficientRowsError):
        load_csv(_write(tmp_path, ""))


def test_load_csv_single_column(tmp_path):
    path = _write(tmp_path, "1.0\n2.0\n")
    with pytest.raises(NoCovariateColumnsError):
        load_csv(path)


def test_load_csv_ragged_rows(tmp_path):
    path = _write(tmp_path, "1.0,2.0\n3.0\n")
    with pytest.raises(InputError):
        load_csv(path)


def test_load_csv_bad_y_column(tmp_path):
    path = _write(tmp_path, "1.0,2.0\n3.0,4.0\n")
    with pytest.raises(InputError):
        load_csv(path, y_column="middle")
    with pytest.raises(InputError):
        load_csv(path, y_column=7)


# ---------------------------------------------------------------------------
# Sample


def test_sample_validates_shapes():
    with pytest.raises(InputError):
        Sample(x=np.zeros((3, 2)), y=np.zeros(4))
    with pytest.raises(InsufficientRowsError):
        Sample(x=np.zeros((1, 2)), y=np.zeros(1))
    with pytest.raises(NonFiniteInputError):
        Sample(x=np.array([[0.0], [np.inf]]), y=np.zeros(2))
    with pytest.raises(NonFiniteInputError):
        Sample(x=np.zeros((2, 1)), y=np.array([0.0, np.nan]))


def test_sample_dimensions():
    s = Sample(x=np.zeros((5, 3)), y=np.arange(5.0))
    assert s.n == 5 and s.d == 3


# ---------------------------------------------------------------------------
# compute_ranks


def test_ranks_hand_example_with_ties():
    # Ties share the highest position among equals.
    r = compute_ranks(np.array([3.0, 1.0, 4.0, 1.0, 5.0]))
    assert r.r.tolist() == [3, 2, 4, 2, 5]


def test_ranks_distinct_data_are_a_permutation():
    rng = np.random.default_rng(11)
    for _ in range(5):
        y = rng.standard_normal(40)
        r = compute_ranks(y).r
        assert sorted(r.tolist()) == list(range(1, 41))
        # The max always lands at rank n, the min at its tie count (1 here).
        assert r[np.argmax(y)] == 40
        assert r[np.argmin(y)] == 1


def test_ranks_all_tied():
    r = compute_ranks(np.full(6, 2.5))
    assert r.r.tolist() == [6] * 6


def test_ranks_invariant_under_increasing_transform():
    rng = np.random.default_rng(3)
    y = rng.standard_normal(60)
    a = compute_ranks(y).r
    b = compute_ranks(np.exp(y)).r
    c = compute_ranks(3.0 * y - 7.0).r
    np.testing.assert_array_equal(a, b)
    np.testing.assert_array_equal(a, c)


def test_ranks_reject_tiny_input():
    with pytest.raises(InsufficientRowsError):
        compute_ranks(np.array([1.0]))


# ---------------------------------------------------------------------------
# minmax_scale


def test_minmax_scale_hand_example():
    m = minmax_scale(np.array([[1.0, 10.0], [3.0, 10.0], [5.0, 10.0]]))
    np.testing.assert_array_equal(m.xs, [[0.0, 0.0], [0.5, 0.0], [1.0, 0.0]])
    # Constant column keeps scale 1 so the map stays invertible in form.
    np.testing.assert_array_equal(m.scales, [4.0, 1.0])
    np.testing.assert_array_equal(m.offsets, [1.0, 10.0])


def test_minmax_scale_output_range():
    rng = np.random.default_rng(8)
    x = rng.standard_normal((50, 4)) * 100 - 17
    m = minmax_scale(x)
    assert m.xs.min() >= 0.0 and m.xs.max() <= 1.0
    # Each non-constant column attains both endpoints.
    np.testing.assert_array_equal(m.xs.min(axis=0), np.zeros(4))
    np.testing.assert_array_equal(m.xs.max(axis=0), np.ones(4))


def test_minmax_scale_roundtrip():
    rng = np.random.default_rng(9)
    x = rng.uniform(-5, 5, size=(30, 3))
    m = minmax_scale(x)
    np.testing.assert_allclose(m.xs * m.scales + m.offsets, x, atol=1e-12)
