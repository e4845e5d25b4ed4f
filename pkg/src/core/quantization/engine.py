"""
Coherent-state quantization over an arbitrary BasisSet and chart grid.

With |x> = N(x)^{-1/2} sum_n conj(phi_n(x)) |n>, the operator
A_f = int f(x) |x><x| N(x) mu(dx) has entries

    <n'| A_f |n> = int f(x) conj(phi_n'(x)) phi_n(x) mu(dx),

the N(x) factor cancelling against the two normalizations of |x>. The
integral is evaluated on a ProductGrid whose first factor is the time
coordinate: for every compact node the time integral is a real batched
matrix product against the Gaussian factors, then it is contracted with the
compact overlaps Z^dagger Z.
"""

from typing import Callable, Union

import numpy as np
import structlog

from constants import FLOAT_BUDGET
from src.core.errors import DegenerateBasisError, DimensionMismatchError, NonFiniteObservableError
from src.core.numerics.matrix import ComplexMatrix, identity
from src.core.numerics.quadrature import ProductGrid
from src.core.quantization.basis import BasisSet, CoherentState, Point

log = structlog.get_logger(__name__)

Observable = Callable[..., Union[np.ndarray, complex, float]]


def normalization(basis: BasisSet, x: Point) -> float:
    """N(x) = sum_n |phi_n(x)|^2 over all components"""
    values = basis.evaluate(x)
    total = float(np.sum(np.abs(values) ** 2))
    if not np.isfinite(total) or total <= 0.0:
        raise DegenerateBasisError(f"N(x) = {total} at tau={x.tau}, coords={x.coords}")
    return total


def coherent_state(basis: BasisSet, x: Point) -> CoherentState:
    values = basis.evaluate(x)
    norm_factor = normalization(basis, x)
    return CoherentState(values.conj().T / np.sqrt(norm_factor), norm_factor)


def _chunk_size(basis: BasisSet, tau_nodes: int, budget: int) -> int:
    per_node = basis.count * max(tau_nodes, basis.count, basis.components)
    return max(1, budget // per_node)


def _check_grid(basis: BasisSet, grid: ProductGrid) -> None:
    if grid.rank != 1 + basis.compact_rank:
        raise DimensionMismatchError(
            f"grid has {grid.rank} factors, basis needs 1 time + {basis.compact_rank} compact"
        )


def quantize(basis: BasisSet, f: Observable, grid: ProductGrid, budget: int = FLOAT_BUDGET) -> ComplexMatrix:
    """
    Matrix of A_f in the basis. `f(tau, *coords)` receives broadcastable
    arrays: tau of shape (1, n_tau), each compact coordinate of shape (c, 1).
    """
    _check_grid(basis, grid)
    tau_grid = grid.factors[0]
    tau = tau_grid.nodes
    tau_weights = grid.factor_weights(0)
    compact = grid.tail(1)
    compact_nodes = compact.nodes
    compact_weights = compact.weights

    gaussians = basis.time_factor(tau)
    n = basis.count
    result = np.zeros((n, n), dtype=np.complex128)
    chunk = _chunk_size(basis, tau.size, budget)

    for start in range(0, compact_nodes.shape[0], chunk):
        block = compact_nodes[start:start + chunk]
        columns = [block[:, j:j + 1] for j in range(block.shape[1])]
        values = np.broadcast_to(np.asarray(f(tau[None, :], *columns)), (block.shape[0], tau.size))
        if not np.all(np.isfinite(values)):
            raise NonFiniteObservableError("observable is NaN or infinite at a quadrature node")

        weighted = values * tau_weights[None, :]
        # time integral: (c, n, t) @ (t, n) for every compact node
        time_part = np.matmul(np.swapaxes(weighted[:, :, None] * gaussians[None, :, :], 1, 2), gaussians)
        profiles = basis.compact_factor(*[block[:, j] for j in range(block.shape[1])])
        overlaps = np.matmul(profiles.conj(), np.swapaxes(profiles, 1, 2))
        result += np.einsum("c,cij,cij->ij", compact_weights[start:start + chunk], time_part, overlaps)

    if not np.all(np.isfinite(result)):
        raise NonFiniteObservableError("quantized matrix overflowed; the observable is too large on the grid")
    if basis.mixing is not None:
        result = basis.mixing.conj() @ result @ basis.mixing.T
    log.debug("quantize_done", dim=n, tau_nodes=tau.size, compact_nodes=compact_nodes.shape[0])
    return ComplexMatrix(result, basis.label_offset, _matrix_labels(basis))


def _matrix_labels(basis: BasisSet):
    # integer windows are described by label_offset alone
    if all(isinstance(label, (int, np.integer)) for label in basis.labels):
        if list(basis.labels) == [i - basis.label_offset for i in range(basis.count)]:
            return None
    return basis.labels


def identity_resolution_defect(basis: BasisSet, grid: ProductGrid) -> float:
    """max |int |x><x| N(x) mu(dx) - I|, i.e. the orthonormality defect of the basis"""
    resolved = quantize(basis, lambda tau, *coords: 1.0, grid)
    expected = identity(basis.count, resolved.label_offset, resolved.labels)
    return float(np.max(np.abs(resolved.entries - expected.entries)))


def compact_overlap(basis: BasisSet, compact: ProductGrid, budget: int = FLOAT_BUDGET) -> np.ndarray:
    """Gram matrix int Z_n'^dagger Z_n over the compact factor alone"""
    if compact.rank != basis.compact_rank:
        raise DimensionMismatchError(f"compact grid has {compact.rank} factors, basis needs {basis.compact_rank}")
    nodes = compact.nodes
    weights = compact.weights
    gram = np.zeros((basis.count, basis.count), dtype=np.complex128)
    chunk = max(1, budget // (basis.count * basis.components))
    for start in range(0, nodes.shape[0], chunk):
        block = nodes[start:start + chunk]
        profiles = basis.compact_factor(*[block[:, j] for j in range(block.shape[1])])
        gram += np.einsum("c,cid,cjd->ij", weights[start:start + chunk], profiles.conj(), profiles)
    return gram


def lower_symbol(basis: BasisSet, a: ComplexMatrix, x: Point) -> complex:
    """<x| A |x>"""
    if a.dim != basis.count:
        raise DimensionMismatchError(f"operator of dimension {a.dim} for a basis of {basis.count} elements")
    state = coherent_state(basis, x)
    coefficients = state.coefficients
    return complex(np.einsum("ci,ij,cj->", coefficients.conj(), a.entries, coefficients))
