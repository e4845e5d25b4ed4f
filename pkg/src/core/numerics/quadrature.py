"""
Quadrature grids for the chart measures.

One-dimensional rules (Gauss-Legendre on an interval, uniform trapezoid on the
circle, composite Gauss-Legendre on the tau window) combine into ProductGrid
tensor grids carrying per-factor measure densities and an overall
normalization, e.g. (1/2pi) dtau dtheta for the 2d chart or
sin^2(chi) sin(theta) dchi dtheta dphi for S^3.
"""

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from constants import DomainTag, TAU_TAIL_WIDTH, DEFAULT_NODES_PER_UNIT
from src.core.errors import InvalidCountError, InvalidIntervalError, DimensionMismatchError


@dataclass(frozen=True, eq=False)
class QuadratureGrid1D:
    nodes: np.ndarray
    weights: np.ndarray
    domain: DomainTag
    lower: float
    upper: float

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if nodes.shape != weights.shape or nodes.ndim != 1 or nodes.size == 0:
            raise DimensionMismatchError("nodes and weights must be matching non-empty vectors")
        if np.any(np.diff(nodes) <= 0):
            raise InvalidIntervalError("quadrature nodes must be strictly increasing")
        if np.any(weights <= 0):
            raise InvalidIntervalError("quadrature weights must be positive")
        nodes.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    @property
    def size(self) -> int:
        return self.nodes.size

    def integrate(self, f: Callable[[np.ndarray], np.ndarray]) -> complex:
        values = np.asarray(f(self.nodes))
        result = np.sum(self.weights * values)
        return complex(result) if np.iscomplexobj(result) else float(result)

    def total_weight(self) -> float:
        return float(np.sum(self.weights))


def _check_count(n: int) -> None:
    if n < 1:
        raise InvalidCountError(f"node count must be at least 1, got {n}")


def gauss_legendre(n: int, a: float, b: float) -> QuadratureGrid1D:
    """n-point Gauss-Legendre rule on [a, b], exact for degree <= 2n-1"""
    _check_count(n)
    if not a < b:
        raise InvalidIntervalError(f"invalid interval [{a}, {b}]")
    x, w = np.polynomial.legendre.leggauss(n)
    half = 0.5 * (b - a)
    return QuadratureGrid1D(half * x + 0.5 * (a + b), half * w, DomainTag.INTERVAL, a, b)


def periodic_trapezoid(n: int) -> QuadratureGrid1D:
    """Uniform rule on [0, 2pi): exact for e^{ik theta}, |k| < n"""
    _check_count(n)
    nodes = 2.0 * np.pi * np.arange(n) / n
    weights = np.full(n, 2.0 * np.pi / n)
    return QuadratureGrid1D(nodes, weights, DomainTag.PERIODIC, 0.0, 2.0 * np.pi)


def composite_gauss_legendre(a: float, b: float, panels: int, nodes_per_panel: int) -> QuadratureGrid1D:
    _check_count(panels)
    _check_count(nodes_per_panel)
    if not a < b:
        raise InvalidIntervalError(f"invalid interval [{a}, {b}]")
    x, w = np.polynomial.legendre.leggauss(nodes_per_panel)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mids = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mids[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return QuadratureGrid1D(nodes, weights, DomainTag.INTERVAL, a, b)


def tau_window_half_width(M: float, epsilon: float) -> float:
    if epsilon <= 0:
        raise InvalidIntervalError(f"epsilon must be positive, got {epsilon}")
    return M + TAU_TAIL_WIDTH / math.sqrt(epsilon)


def tau_window_grid(M: float, epsilon: float, nodes_per_unit: int = DEFAULT_NODES_PER_UNIT) -> QuadratureGrid1D:
    """
    Composite Gauss-Legendre grid on [-T, T], T = M + 10/sqrt(epsilon).

    Panels have length at most one; the Gaussian tails beyond the window are
    below erfc(10) relative to any product of two basis Gaussians.
    """
    if M < 0:
        raise InvalidCountError(f"label window must be non-negative, got {M}")
    half_width = tau_window_half_width(M, epsilon)
    panels = max(1, math.ceil(2.0 * half_width))
    return composite_gauss_legendre(-half_width, half_width, panels, nodes_per_unit)


@dataclass(frozen=True, eq=False)
class ProductGrid:
    """Tensor grid over 1 to 4 factors with per-factor measure densities"""

    factors: Tuple[QuadratureGrid1D, ...]
    densities: Tuple[np.ndarray, ...]
    normalization: float = 1.0

    def __post_init__(self):
        factors = tuple(self.factors)
        if not 1 <= len(factors) <= 4:
            raise InvalidCountError(f"a product grid has 1 to 4 factors, got {len(factors)}")
        densities = tuple(np.asarray(d, dtype=float) for d in self.densities)
        if len(densities) != len(factors):
            raise DimensionMismatchError("one density vector per factor is required")
        for grid, density in zip(factors, densities):
            if density.shape != grid.nodes.shape or np.any(density <= 0):
                raise InvalidIntervalError("measure densities must be positive at every node")
        if self.normalization <= 0:
            raise InvalidIntervalError("measure normalization must be positive")
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "densities", densities)

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def size(self) -> int:
        return int(np.prod([g.size for g in self.factors]))

    def factor_weights(self, index: int) -> np.ndarray:
        return self.factors[index].weights * self.densities[index]

    @cached_property
    def nodes(self) -> np.ndarray:
        """(size, rank) array of tensor nodes, first factor slowest"""
        mesh = np.meshgrid(*[g.nodes for g in self.factors], indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=1)

    @cached_property
    def weights(self) -> np.ndarray:
        combined = np.ones(1)
        for i in range(self.rank):
            combined = np.multiply.outer(combined, self.factor_weights(i)).ravel()
        return self.normalization * combined

    def total_weight(self) -> float:
        return float(self.normalization * np.prod([np.sum(self.factor_weights(i)) for i in range(self.rank)]))

    def tail(self, start: int = 1) -> "ProductGrid":
        """Grid over factors[start:], carrying the normalization"""
        if not 0 <= start < self.rank:
            raise InvalidCountError(f"no factors left after dropping {start}")
        return ProductGrid(self.factors[start:], self.densities[start:], self.normalization)

    def integrate(self, f: Callable[..., np.ndarray]) -> complex:
        """Integrate f(*coordinates) over the grid"""
        values = np.asarray(f(*self.nodes.T))
        values = np.broadcast_to(values, (self.size,))
        result = np.sum(self.weights * values)
        return complex(result) if np.iscomplexobj(result) else float(result)


def product_grid(*factors: QuadratureGrid1D,
                 densities: Optional[Sequence[np.ndarray]] = None,
                 normalization: float = 1.0) -> ProductGrid:
    if densities is None:
        densities = [np.ones(g.size) for g in factors]
    return ProductGrid(tuple(factors), tuple(densities), normalization)


def prepend_factor(first: QuadratureGrid1D, rest: ProductGrid) -> ProductGrid:
    """Chart grid tau x compact from a tau rule and a compact product grid"""
    return ProductGrid((first,) + rest.factors, (np.ones(first.size),) + rest.densities, rest.normalization)


def s3_product_grid(n_chi: int, n_theta: int, n_phi: int) -> ProductGrid:
    """
    Hyperspherical chart of the unit S^3,
    xi = (cos chi, sin chi sin theta cos phi, sin chi sin theta sin phi, sin chi cos theta),
    with measure sin^2(chi) sin(theta); total weight 2pi^2.
    """
    chi = gauss_legendre(n_chi, 0.0, math.pi)
    theta = gauss_legendre(n_theta, 0.0, math.pi)
    phi = periodic_trapezoid(n_phi)
    return ProductGrid(
        (chi, theta, phi),
        (np.sin(chi.nodes) ** 2, np.sin(theta.nodes), np.ones(phi.size)),
    )


def s3_unit_vector(chi, theta, phi) -> np.ndarray:
    """Unit 4-vectors of the hyperspherical chart, stacked on the last axis"""
    chi, theta, phi = np.broadcast_arrays(np.asarray(chi, float), np.asarray(theta, float), np.asarray(phi, float))
    sin_chi = np.sin(chi)
    return np.stack([
        np.cos(chi),
        sin_chi * np.sin(theta) * np.cos(phi),
        sin_chi * np.sin(theta) * np.sin(phi),
        sin_chi * np.cos(theta),
    ], axis=-1)
