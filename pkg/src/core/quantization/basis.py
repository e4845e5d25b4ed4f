"""
Orthonormal families, chart points and coherent states.

Both de Sitter charts use families of "suitably weighted Fourier exponentials":
a normalized Gaussian in the time coordinate centred on a time label, times a
profile on the compact factor (e^{im theta} on the circle, Z_J(xi) on S^3).
A BasisSet exposes that factorization to the quantization engine, together
with an optional unitary mixing of the family.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Callable, Optional, Sequence, Tuple

import numpy as np

from src.core.errors import DimensionMismatchError


@dataclass(frozen=True)
class Point:
    tau: float
    coords: Tuple[float, ...] = field(default_factory=tuple)


@dataclass(frozen=True, eq=False)
class CoherentState:
    """
    Coefficients of |x> in the basis, shape (components, count).

    Scalar bases have a single component row; vector bases keep one row per
    C^{2s+1} component, contracted together in inner products.
    """

    coefficients: np.ndarray
    norm_factor: float

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.coefficients))

    @property
    def ket(self) -> np.ndarray:
        """Flat coefficient vector of a scalar coherent state"""
        if self.coefficients.shape[0] != 1:
            raise DimensionMismatchError("vector coherent states have no single ket vector")
        return self.coefficients[0]

    def overlap(self, other: "CoherentState") -> complex:
        """<self|other>, contracting the component index"""
        return complex(np.sum(self.coefficients.conj() * other.coefficients))


class BasisSet(ABC):
    """
    Finite orthonormal family phi_n(tau, y) = sum_k U_nk g_k(tau) Z_k(y).

    Subclasses provide the time factor g and the compact profile Z; U is the
    optional unitary mixing (identity when None).
    """

    labels: Tuple[Any, ...]
    label_offset: int
    components: int
    compact_rank: int
    mixing: Optional[np.ndarray] = None

    @property
    def count(self) -> int:
        return len(self.labels)

    @abstractmethod
    def time_factor(self, tau: np.ndarray) -> np.ndarray:
        """Real array (..., count)"""

    @abstractmethod
    def compact_factor(self, *coords: np.ndarray) -> np.ndarray:
        """Complex array (..., count, components)"""

    def evaluate(self, point: Point) -> np.ndarray:
        """phi_n(x) for every n, shape (count, components)"""
        if len(point.coords) != self.compact_rank:
            raise DimensionMismatchError(
                f"expected {self.compact_rank} compact coordinates, got {len(point.coords)}"
            )
        g = self.time_factor(np.asarray(point.tau, dtype=float))
        z = self.compact_factor(*[np.asarray(c, dtype=float) for c in point.coords])
        values = g[:, None] * z
        if self.mixing is not None:
            values = self.mixing @ values
        return values


class GaussianWeightedBasis(BasisSet):
    """
    phi_n(tau, y) = (eps/pi)^{1/4} exp(-(eps/2)(tau - tau_n)^2) Z_n(y).

    `compact` maps compact coordinate arrays to Z values of shape
    (..., count, components) and must be orthonormal for the compact measure.
    """

    def __init__(self, time_labels: Sequence[float], epsilon: float,
                 compact: Callable[..., np.ndarray], compact_rank: int,
                 components: int = 1, labels: Optional[Sequence[Any]] = None,
                 label_offset: int = 0, mixing: Optional[np.ndarray] = None):
        if epsilon <= 0:
            raise ValueError(f"epsilon must be positive, got {epsilon}")
        self.time_labels = np.asarray(time_labels, dtype=float)
        self.epsilon = float(epsilon)
        self.compact = compact
        self.compact_rank = compact_rank
        self.components = components
        self.labels = tuple(labels) if labels is not None else tuple(range(len(self.time_labels)))
        self.label_offset = label_offset
        if len(self.labels) != self.time_labels.size:
            raise DimensionMismatchError("one time label per basis element is required")
        if mixing is not None:
            mixing = np.asarray(mixing, dtype=np.complex128)
            if mixing.shape != (self.count, self.count):
                raise DimensionMismatchError(f"mixing matrix must be {self.count}x{self.count}")
        self.mixing = mixing

    def time_factor(self, tau: np.ndarray) -> np.ndarray:
        tau = np.asarray(tau, dtype=float)
        scale = (self.epsilon / np.pi) ** 0.25
        return scale * np.exp(-0.5 * self.epsilon * (tau[..., None] - self.time_labels) ** 2)

    def compact_factor(self, *coords: np.ndarray) -> np.ndarray:
        return np.asarray(self.compact(*coords), dtype=np.complex128)

    def with_mixing(self, unitary: np.ndarray) -> "GaussianWeightedBasis":
        """Family phi'_k = sum_n U_kn phi_n"""
        unitary = np.asarray(unitary, dtype=np.complex128)
        combined = unitary if self.mixing is None else unitary @ self.mixing
        return GaussianWeightedBasis(self.time_labels, self.epsilon, self.compact, self.compact_rank,
                                     self.components, self.labels, self.label_offset, combined)
