"""
Unit tests for ComplexMatrix and matrix helpers
"""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from src.core.errors import DimensionMismatchError, MarginTooLargeError
from src.core.numerics.matrix import (
    ComplexMatrix,
    adjoint,
    commutator,
    diagonal,
    identity,
    interior_block,
    interior_max,
    interior_norm,
    max_abs_difference,
    self_adjoint_defect,
    shift,
    zeros,
)

finite = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)


def _complex_matrices(dim):
    return st.builds(
        lambda re, im: ComplexMatrix(re + 1j * im),
        arrays(np.float64, (dim, dim), elements=finite),
        arrays(np.float64, (dim, dim), elements=finite),
    )


@pytest.mark.unit
class TestComplexMatrix:
    """Test construction, labels and arithmetic."""

    def test_entries_are_read_only_copies(self):
        data = np.eye(3)
        a = ComplexMatrix(data)
        data[0, 0] = 5.0

        assert a.entries[0, 0] == 1.0
        assert a.entries.dtype == np.complex128
        with pytest.raises(ValueError):
            a.entries[0, 0] = 2.0

    def test_rejects_non_square(self):
        with pytest.raises(DimensionMismatchError):
            ComplexMatrix(np.zeros((2, 3)))

    def test_label_offset_indexing(self):
        a = diagonal([-2.0, -1.0, 0.0, 1.0, 2.0], label_offset=2)

        assert a.label_list() == [-2, -1, 0, 1, 2]
        assert a.entry(-2, -2) == -2.0
        assert a.entry(1, 1) == 1.0
        with pytest.raises(IndexError):
            a.index_of(3)

    def test_tuple_labels(self):
        labels = [(0, 0, 0, 1), (0, 0, 0, 2)]
        a = diagonal([1.0, 2.0], labels=labels)

        assert a.entry((0, 0, 0, 2), (0, 0, 0, 2)) == 2.0
        assert a.label_list() == labels

    def test_label_count_must_match(self):
        with pytest.raises(DimensionMismatchError):
            identity(3, labels=[(0,), (1,)])

    def test_incompatible_operands(self):
        with pytest.raises(DimensionMismatchError):
            identity(3) + identity(4)
        with pytest.raises(DimensionMismatchError):
            identity(3, label_offset=1) @ identity(3)

    def test_arithmetic(self):
        a = diagonal([1.0, 2.0])
        b = identity(2)

        assert np.allclose((a + b).entries, np.diag([2.0, 3.0]))
        assert np.allclose((a - b).entries, np.diag([0.0, 1.0]))
        assert np.allclose((-a).entries, -np.diag([1.0, 2.0]))
        assert np.allclose((2j * a).entries, np.diag([2j, 4j]))
        assert np.allclose((a @ a).entries, np.diag([1.0, 4.0]))

    def test_shift_raises_labels(self):
        raising = shift(5, label_offset=2)

        assert raising.entry(1, 0) == 1.0
        assert raising.entry(0, 1) == 0.0
        m = diagonal(np.arange(-2, 3), label_offset=2)
        assert max_abs_difference(commutator(m, raising), raising) == 0.0


@pytest.mark.unit
class TestMatrixProperties:
    """Algebraic identities checked on random matrices."""

    @settings(max_examples=50, deadline=None)
    @given(_complex_matrices(4), _complex_matrices(4))
    def test_adjoint_reverses_products(self, a, b):
        left = adjoint(a @ b)
        right = adjoint(b) @ adjoint(a)
        assert max_abs_difference(left, right) <= 1e-10

    @settings(max_examples=50, deadline=None)
    @given(_complex_matrices(4), _complex_matrices(4))
    def test_commutator_antisymmetric(self, a, b):
        assert max_abs_difference(commutator(a, b), -commutator(b, a)) == 0.0

    @settings(max_examples=30, deadline=None)
    @given(_complex_matrices(3), _complex_matrices(3), _complex_matrices(3))
    def test_jacobi_identity(self, a, b, c):
        total = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) + commutator(c, commutator(a, b))
        assert np.max(np.abs(total.entries)) <= 1e-8

    @settings(max_examples=50, deadline=None)
    @given(_complex_matrices(4))
    def test_hermitian_part_is_self_adjoint(self, a):
        h = (a + adjoint(a)) * 0.5
        assert self_adjoint_defect(h) == 0.0


@pytest.mark.unit
class TestInteriorBlock:
    """Test the truncation-edge helpers."""

    def test_interior_block_drops_margin(self):
        a = ComplexMatrix(np.arange(25, dtype=float).reshape(5, 5))
        block = interior_block(a, 1)

        assert block.shape == (3, 3)
        assert block[0, 0] == 6.0

    def test_interior_norm_is_frobenius(self):
        a = diagonal([9.0, 3.0, 4.0, 9.0])
        assert interior_norm(a, 1) == pytest.approx(5.0)
        assert interior_max(a, 1) == pytest.approx(4.0)

    def test_margin_too_large(self):
        with pytest.raises(MarginTooLargeError):
            interior_norm(identity(5), 3)
        with pytest.raises(MarginTooLargeError):
            interior_norm(identity(4), 2)

    def test_zeros_has_zero_norm(self):
        assert interior_norm(zeros(7), 2) == 0.0
