"""
Dense complex matrices indexed by basis labels.

Every truncated operator of the toolkit (quantized observables, the analytic
ambient-coordinate operators, their commutators) is a ComplexMatrix. Row and
column index i carries the basis label ``i - label_offset`` unless an explicit
label list is attached (the 4d bases label by tuples).
"""

from dataclasses import dataclass, field
from typing import Any, Optional, Sequence, Tuple

import numpy as np

from src.core.errors import DimensionMismatchError, MarginTooLargeError


@dataclass(frozen=True, eq=False)
class ComplexMatrix:
    entries: np.ndarray
    label_offset: int = 0
    labels: Optional[Tuple[Any, ...]] = field(default=None)

    def __post_init__(self):
        data = np.array(self.entries, dtype=np.complex128, copy=True)
        if data.ndim != 2 or data.shape[0] != data.shape[1] or data.shape[0] < 1:
            raise DimensionMismatchError(f"expected a non-empty square matrix, got shape {data.shape}")
        data.setflags(write=False)
        object.__setattr__(self, "entries", data)
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != data.shape[0]:
                raise DimensionMismatchError(f"{len(labels)} labels for dimension {data.shape[0]}")
            object.__setattr__(self, "labels", labels)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def label_list(self) -> list:
        if self.labels is not None:
            return list(self.labels)
        return [i - self.label_offset for i in range(self.dim)]

    def index_of(self, label) -> int:
        if self.labels is not None:
            return self.labels.index(label)
        index = label + self.label_offset
        if not 0 <= index < self.dim:
            raise IndexError(f"label {label} outside the truncation window")
        return index

    def entry(self, row_label, col_label) -> complex:
        """Matrix element <row_label| A |col_label>"""
        return complex(self.entries[self.index_of(row_label), self.index_of(col_label)])

    def with_entries(self, entries: np.ndarray) -> "ComplexMatrix":
        return ComplexMatrix(entries, self.label_offset, self.labels)

    # Arithmetic keeps the label metadata of the left operand
    def __add__(self, other: "ComplexMatrix") -> "ComplexMatrix":
        _check_compatible(self, other)
        return self.with_entries(self.entries + other.entries)

    def __sub__(self, other: "ComplexMatrix") -> "ComplexMatrix":
        _check_compatible(self, other)
        return self.with_entries(self.entries - other.entries)

    def __neg__(self) -> "ComplexMatrix":
        return self.with_entries(-self.entries)

    def __mul__(self, scalar: complex) -> "ComplexMatrix":
        if isinstance(scalar, ComplexMatrix):
            return NotImplemented
        return self.with_entries(scalar * self.entries)

    __rmul__ = __mul__

    def __matmul__(self, other: "ComplexMatrix") -> "ComplexMatrix":
        return matmul(self, other)

    def __repr__(self):
        return f"ComplexMatrix(dim={self.dim}, label_offset={self.label_offset})"


def _check_compatible(a: ComplexMatrix, b: ComplexMatrix) -> None:
    if a.dim != b.dim or a.label_offset != b.label_offset or a.labels != b.labels:
        raise DimensionMismatchError(
            f"incompatible operands: dim {a.dim}/{b.dim}, label_offset {a.label_offset}/{b.label_offset}"
        )


def matmul(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    _check_compatible(a, b)
    return a.with_entries(a.entries @ b.entries)


def adjoint(a: ComplexMatrix) -> ComplexMatrix:
    """Conjugate transpose"""
    return a.with_entries(a.entries.conj().T)


def commutator(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """[A, B] = AB - BA"""
    _check_compatible(a, b)
    return a.with_entries(a.entries @ b.entries - b.entries @ a.entries)


def interior_block(a: ComplexMatrix, margin: int) -> np.ndarray:
    if margin < 0 or 2 * margin >= a.dim:
        raise MarginTooLargeError(f"margin {margin} leaves no interior block in dimension {a.dim}")
    stop = a.dim - margin
    return a.entries[margin:stop, margin:stop]


def interior_norm(a: ComplexMatrix, margin: int) -> float:
    """Frobenius norm of the central block, dropping `margin` rows/cols at each end"""
    return float(np.linalg.norm(interior_block(a, margin)))


def interior_max(a: ComplexMatrix, margin: int) -> float:
    block = interior_block(a, margin)
    return float(np.max(np.abs(block))) if block.size else 0.0


def max_abs_difference(a: ComplexMatrix, b: ComplexMatrix) -> float:
    _check_compatible(a, b)
    return float(np.max(np.abs(a.entries - b.entries)))


def self_adjoint_defect(a: ComplexMatrix) -> float:
    return float(np.max(np.abs(a.entries - a.entries.conj().T)))


# Constructors

def identity(dim: int, label_offset: int = 0, labels: Optional[Sequence] = None) -> ComplexMatrix:
    return ComplexMatrix(np.eye(dim, dtype=np.complex128), label_offset, labels)


def zeros(dim: int, label_offset: int = 0, labels: Optional[Sequence] = None) -> ComplexMatrix:
    return ComplexMatrix(np.zeros((dim, dim), dtype=np.complex128), label_offset, labels)


def diagonal(values: Sequence[complex], label_offset: int = 0, labels: Optional[Sequence] = None) -> ComplexMatrix:
    return ComplexMatrix(np.diag(np.asarray(values, dtype=np.complex128)), label_offset, labels)


def shift(dim: int, k: int = 1, label_offset: int = 0) -> ComplexMatrix:
    """Unit shift |m+k><m|: ones on the k-th subdiagonal (rows are the raised labels)"""
    return ComplexMatrix(np.eye(dim, k=-k, dtype=np.complex128), label_offset)
