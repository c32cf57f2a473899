"""Tests for triplet assembly."""

import numpy as np
import pytest

from fracflow.errors import IndexOutOfRange
from fracflow.linalg import TripletAccumulator, assemble_begin, assemble_finish


class TestTripletAccumulator:
    """Tests for TripletAccumulator."""

    def test_duplicates_are_summed(self) -> None:
        """Should sum values that land on the same entry."""
        acc = assemble_begin(2, 2)
        acc.add([0, 0, 1], [1, 1, 0], [1.0, 2.5, -1.0])
        matrix = assemble_finish(acc)
        assert matrix[0, 1] == 3.5
        assert matrix[1, 0] == -1.0
        assert matrix.nnz == 2

    def test_empty_accumulator(self) -> None:
        """Should produce an all-zero matrix of the requested shape."""
        matrix = TripletAccumulator(3, 4).finish()
        assert matrix.shape == (3, 4)
        assert matrix.nnz == 0

    def test_out_of_range_row(self) -> None:
        """Should reject indices outside the shape."""
        acc = TripletAccumulator(2, 2)
        with pytest.raises(IndexOutOfRange):
            acc.add([2], [0], [1.0])

    def test_negative_column(self) -> None:
        """Should reject negative indices."""
        acc = TripletAccumulator(2, 2)
        with pytest.raises(IndexOutOfRange):
            acc.add([0], [-1], [1.0])

    def test_mismatched_lengths(self) -> None:
        """Should reject triplet arrays of different lengths."""
        with pytest.raises(ValueError):
            TripletAccumulator(2, 2).add([0, 1], [0], [1.0, 2.0])

    def test_invalid_shape(self) -> None:
        """Should reject non-positive dimensions."""
        with pytest.raises(ValueError):
            TripletAccumulator(0, 3)

    def test_order_independence(self) -> None:
        """Should give bitwise identical matrices for any block order."""
        rng = np.random.default_rng(7)
        rows = rng.integers(0, 6, 200)
        cols = rng.integers(0, 6, 200)
        vals = rng.normal(size=200) * 10.0 ** rng.integers(-8, 8, 200)

        forward = TripletAccumulator(6, 6)
        for chunk in np.array_split(np.arange(200), 7):
            forward.add(rows[chunk], cols[chunk], vals[chunk])
        backward = TripletAccumulator(6, 6)
        perm = rng.permutation(200)
        for chunk in np.array_split(perm, 5)[::-1]:
            backward.add(rows[chunk], cols[chunk], vals[chunk])

        a = forward.finish()
        b = backward.finish()
        assert np.array_equal(a.indptr, b.indptr)
        assert np.array_equal(a.indices, b.indices)
        assert np.array_equal(a.data, b.data)

    def test_add_local(self) -> None:
        """Should scatter element matrices onto their dofs."""
        acc = TripletAccumulator(3, 3)
        local = np.array([[[1.0, 2.0], [3.0, 4.0]], [[10.0, 0.0], [0.0, 10.0]]])
        dofs = np.array([[0, 1], [1, 2]])
        acc.add_local(dofs, dofs, local)
        dense = acc.finish().toarray()
        expected = np.array([[1.0, 2.0, 0.0], [3.0, 14.0, 0.0], [0.0, 0.0, 10.0]])
        assert np.array_equal(dense, expected)
        assert acc.n_triplets == 8

    def test_sorted_indices(self) -> None:
        """Should emit CSR rows with ascending column indices."""
        acc = TripletAccumulator(2, 3)
        acc.add([0, 0, 0, 1], [2, 0, 1, 2], [1.0, 1.0, 1.0, 1.0])
        matrix = acc.finish()
        assert list(matrix.indices[matrix.indptr[0] : matrix.indptr[1]]) == [0, 1, 2]
