"""
Verification of the fuzzy 2d de Sitter operators: commutation relations on
the interior block, the Casimir diagonal, and the quadrature oracle that
rebuilds the operators from coherent-state quantization.
"""

import math
from dataclasses import asdict, dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
import structlog

from constants import (
    ALGEBRAIC_TOLERANCE,
    DEFAULT_INTERIOR_MARGIN,
    MIN_VERIFY_TRUNCATION,
    ORTHONORMALITY_WARNING,
    QUADRATURE_TOLERANCE,
    Verdict,
    X0Convention,
)
from src.core.errors import DimensionMismatchError, ExprDomainError, TruncationTooSmallError
from src.core.numerics.matrix import (
    ComplexMatrix,
    commutator,
    diagonal,
    identity,
    interior_block,
    interior_norm,
    max_abs_difference,
    self_adjoint_defect,
)
from src.core.numerics.quadrature import ProductGrid
from src.core.quantization.engine import identity_resolution_defect, quantize
from src.expr.analysis import trig_degree
from src.expr.evaluator import evaluate
from src.expr.nodes import Expr
from src.geometry.ds2 import chart
from src.geometry.ds2.operators import analytic_operators, casimir_interior_formula, casimir_target
from src.geometry.ds2.params import DS2Params
from src.geometry.grid_settings import GridSettings

log = structlog.get_logger(__name__)

COMMUTATOR_KEYS = ("x0_x1", "x0_x2", "x1_x2")


@dataclass
class CommutatorReport:
    """Frobenius norms of the relation defects, interior block and full matrix"""
    defects: Dict[str, float]
    full_defects: Dict[str, float]
    unmodified_defects: Dict[str, float]
    relations: Dict[str, str]
    margin: int
    x0_convention: str

    @property
    def max_defect(self) -> float:
        return max(self.defects.values())

    def passed(self, tolerance: float = ALGEBRAIC_TOLERANCE) -> bool:
        return self.max_defect <= tolerance

    def to_dict(self) -> Dict:
        return asdict(self)


def _relation_texts(sign: int) -> Dict[str, str]:
    s = "" if sign > 0 else "-"
    t = "-" if sign > 0 else ""
    return {
        "x0_x1": f"[x0, x1] = {s}i r x2",
        "x0_x2": f"[x0, x2] = {t}i r x1",
        "x1_x2": f"[x1, x2] = {t}i r e^(-eps/2) x0",
    }


UNMODIFIED_RELATIONS = {
    "x0_x1": "[x0, x1] = i r x2",
    "x0_x2": "[x0, x2] = -i r x1",
    "x1_x2": "[x1, x2] = i r x0",
}


def _check_truncation(dim: int) -> None:
    if dim < 2 * MIN_VERIFY_TRUNCATION + 1:
        raise TruncationTooSmallError(
            f"commutator checks need M >= {MIN_VERIFY_TRUNCATION}, got dimension {dim}"
        )


def _relation_residuals(x0: ComplexMatrix, x1: ComplexMatrix, x2: ComplexMatrix,
                        r: float, epsilon: float, sign: int) -> Dict[str, ComplexMatrix]:
    damping = math.exp(-epsilon / 2.0)
    return {
        "x0_x1": commutator(x0, x1) - x2 * (sign * 1j * r),
        "x0_x2": commutator(x0, x2) + x1 * (sign * 1j * r),
        "x1_x2": commutator(x1, x2) + x0 * (sign * 1j * r * damping),
    }


def commutator_report(x0: ComplexMatrix, x1: ComplexMatrix, x2: ComplexMatrix,
                      params: DS2Params, margin: int = DEFAULT_INTERIOR_MARGIN) -> CommutatorReport:
    if not x0.dim == x1.dim == x2.dim:
        raise DimensionMismatchError(f"operator dimensions differ: {x0.dim}, {x1.dim}, {x2.dim}")
    _check_truncation(x0.dim)
    sign = params.x0_convention.sign
    residuals = _relation_residuals(x0, x1, x2, params.r, params.epsilon, sign)

    # the unmodified relations are stated for x0 = r*diag(m)
    cs_x0 = x0 * sign
    unmodified = {
        "x0_x1": commutator(cs_x0, x1) - x2 * (1j * params.r),
        "x0_x2": commutator(cs_x0, x2) + x1 * (1j * params.r),
        "x1_x2": commutator(x1, x2) - cs_x0 * (1j * params.r),
    }
    return CommutatorReport(
        defects={key: interior_norm(residuals[key], margin) for key in COMMUTATOR_KEYS},
        full_defects={key: float(np.linalg.norm(residuals[key].entries)) for key in COMMUTATOR_KEYS},
        unmodified_defects={key: interior_norm(unmodified[key], margin) for key in COMMUTATOR_KEYS},
        relations=_relation_texts(sign),
        margin=margin,
        x0_convention=params.x0_convention.value,
    )


def verify_commutators(params: DS2Params, margin: int = DEFAULT_INTERIOR_MARGIN) -> CommutatorReport:
    if params.M < MIN_VERIFY_TRUNCATION:
        raise TruncationTooSmallError(f"commutator checks need M >= {MIN_VERIFY_TRUNCATION}, got M={params.M}")
    x0, x1, x2 = analytic_operators(params)
    return commutator_report(x0, x1, x2, params, margin)


def casimir_interior_deviation(x0: ComplexMatrix, x1: ComplexMatrix, x2: ComplexMatrix,
                               params: DS2Params, margin: int = DEFAULT_INTERIOR_MARGIN) -> float:
    """max interior |C - diag(r^2 m^2 - r^2 e^{-eps/2}(m^2 + 1/4 + rho^2))| for C = x0^2 - x1^2 - x2^2"""
    casimir = x0 @ x0 - x1 @ x1 - x2 @ x2
    expected = diagonal(casimir_interior_formula(params, casimir.label_list()), casimir.label_offset)
    return float(np.max(np.abs(interior_block(casimir - expected, margin))))


def band_width(a: ComplexMatrix, tol: float = QUADRATURE_TOLERANCE) -> int:
    """Largest |m' - m| carrying an entry above tol"""
    rows, cols = np.nonzero(np.abs(a.entries) > tol)
    if rows.size == 0:
        return 0
    return int(np.max(np.abs(rows - cols)))


def off_band_magnitude(a: ComplexMatrix, width: int) -> float:
    offsets = np.abs(np.subtract.outer(np.arange(a.dim), np.arange(a.dim)))
    outside = np.abs(a.entries[offsets > width])
    return float(np.max(outside)) if outside.size else 0.0


# Deterministic sample lattice for recognising the closed-form observables
_SAMPLE_TAU = np.array([-2.7, -1.3, -0.4, 0.6, 1.9, 3.1])[None, :]
_SAMPLE_THETA = np.array([0.3, 1.1, 2.2, 3.0, 4.4, 5.7])[:, None]


def reference_operator(params: DS2Params, expr: Expr) -> Optional[Tuple[str, ComplexMatrix]]:
    """
    The closed-form matrix of quantize(expr) when expr is, as a function on
    the chart, one of 1, tau, x0, x1, x2; None otherwise.
    """
    bindings = chart.chart_bindings(params, _SAMPLE_TAU, _SAMPLE_THETA)
    try:
        values = np.broadcast_to(evaluate(expr, bindings), (_SAMPLE_THETA.size, _SAMPLE_TAU.size))
    except ExprDomainError:
        return None
    if not np.all(np.isfinite(values)):
        return None

    cs = params.model_copy(update={"x0_convention": X0Convention.CS})
    x0, x1, x2 = analytic_operators(cs)
    candidates = (
        ("1", np.ones_like(values), lambda: identity(params.dim, params.M)),
        ("tau", bindings["tau"], lambda: diagonal(np.asarray(params.labels, dtype=float), params.M)),
        ("x0", bindings["x0"], lambda: x0),
        ("x1", bindings["x1"], lambda: x1),
        ("x2", bindings["x2"], lambda: x2),
    )
    for name, reference, build in candidates:
        reference = np.broadcast_to(reference, values.shape)
        scale = 1.0 + float(np.max(np.abs(reference)))
        if np.max(np.abs(values - reference)) <= 1e-12 * scale:
            return name, build()
    return None


def oracle_compare(params: DS2Params, expr: Expr, settings: Optional[GridSettings] = None,
                   grid: Optional[ProductGrid] = None) -> float:
    """
    Quadrature-vs-closed-form defect of quantize(expr).

    For 1, tau and the ambient coordinates this is the max-entry difference
    from the analytic matrix. Otherwise, when the trigonometric degree d of
    expr is known, it is the largest entry outside the d-band together with
    the self-adjointness defect; when unknown, the self-adjointness defect.
    """
    grid = grid or chart.chart_grid(params, settings)
    quantized = quantize(chart.basis(params), chart.observable(params, expr), grid)
    reference = reference_operator(params, expr)
    if reference is not None:
        name, matrix = reference
        defect = max_abs_difference(quantized, matrix)
        log.debug("oracle_reference", observable=name, defect=defect)
        return defect

    degree = trig_degree(expr, chart.ambient_degrees)
    adjoint_defect = self_adjoint_defect(quantized)
    if degree is None:
        return adjoint_defect
    return max(off_band_magnitude(quantized, degree), adjoint_defect)


def fuzzy_time_spectrum_defect(params: DS2Params, grid: Optional[ProductGrid] = None,
                               margin: int = DEFAULT_INTERIOR_MARGIN) -> float:
    """max distance to the integers of the eigenvalues of quantize(r tau)/r on the interior block"""
    grid = grid or chart.chart_grid(params)
    r = params.r
    time_operator = quantize(chart.basis(params), lambda tau, theta: r * tau, grid)
    block = interior_block(time_operator, margin) / r
    eigenvalues = np.linalg.eigvalsh(0.5 * (block + block.conj().T))
    return float(np.max(np.abs(eigenvalues - np.round(eigenvalues))))


def _verdict(checks: Dict[str, Tuple[float, float]]) -> Tuple[List[str], Verdict]:
    failed = [name for name, (value, limit) in checks.items() if not value <= limit]
    return failed, Verdict.FAIL if failed else Verdict.PASS


def verify_matrices(x0: ComplexMatrix, x1: ComplexMatrix, x2: ComplexMatrix, params: DS2Params,
                    margin: int = DEFAULT_INTERIOR_MARGIN) -> Dict:
    """Algebraic verification report for a given operator triple"""
    commutators = commutator_report(x0, x1, x2, params, margin)
    casimir_deviation = casimir_interior_deviation(x0, x1, x2, params, margin)
    adjoint_defects = {
        "x0": self_adjoint_defect(x0),
        "x1": self_adjoint_defect(x1),
        "x2": self_adjoint_defect(x2),
    }

    checks = {f"commutator_{key}": (value, ALGEBRAIC_TOLERANCE) for key, value in commutators.defects.items()}
    checks["casimir_interior"] = (casimir_deviation, ALGEBRAIC_TOLERANCE)
    checks.update({f"self_adjoint_{key}": (value, ALGEBRAIC_TOLERANCE) for key, value in adjoint_defects.items()})
    failed, verdict = _verdict(checks)

    centre = x0.dim // 2
    casimir = x0 @ x0 - x1 @ x1 - x2 @ x2
    return {
        "model": "ds2",
        "params": params.model_dump(mode="json"),
        "commutator_defects": commutators.defects,
        "commutator_relations": commutators.relations,
        "unmodified_commutator_defects": commutators.unmodified_defects,
        "unmodified_relations": dict(UNMODIFIED_RELATIONS),
        "full_matrix_commutator_defects": commutators.full_defects,
        "casimir_interior_deviation": casimir_deviation,
        "identity_defect": None,
        "casimir_target": casimir_target(params),
        "casimir_centre_entry": float(casimir.entries[centre, centre].real),
        "self_adjoint_defects": adjoint_defects,
        "thresholds": {"algebraic": ALGEBRAIC_TOLERANCE, "quadrature": QUADRATURE_TOLERANCE},
        "interior_margin": margin,
        "failed_checks": failed,
        "verdict": verdict.value,
    }


def _coordinate_function(params: DS2Params, name: str):
    def f(tau, theta):
        return chart.chart_bindings(params, tau, theta)[name]
    return f


def verify_suite(params: DS2Params, settings: Optional[GridSettings] = None,
                 margin: int = DEFAULT_INTERIOR_MARGIN) -> Dict:
    """Algebraic report on the analytic operators plus the quadrature oracle checks"""
    if params.M < MIN_VERIFY_TRUNCATION:
        raise TruncationTooSmallError(f"verification needs M >= {MIN_VERIFY_TRUNCATION}, got M={params.M}")
    x0, x1, x2 = analytic_operators(params)
    report = verify_matrices(x0, x1, x2, params, margin)

    grid = chart.chart_grid(params, settings)
    basis = chart.basis(params)
    identity_defect = identity_resolution_defect(basis, grid)
    if identity_defect > ORTHONORMALITY_WARNING:
        log.warning("orthonormality_defect", defect=identity_defect, M=params.M, epsilon=params.epsilon)

    cs = params.model_copy(update={"x0_convention": X0Convention.CS})
    cs_ops = analytic_operators(cs)
    oracle_defects = {}
    for name, reference in zip(("x0", "x1", "x2"), cs_ops):
        quantized = quantize(basis, _coordinate_function(params, name), grid)
        oracle_defects[name] = max_abs_difference(quantized, reference)
    spectrum_defect = fuzzy_time_spectrum_defect(params, grid, margin)

    checks = {"identity_resolution": (identity_defect, QUADRATURE_TOLERANCE),
              "fuzzy_time_spectrum": (spectrum_defect, QUADRATURE_TOLERANCE)}
    checks.update({f"oracle_{key}": (value, QUADRATURE_TOLERANCE) for key, value in oracle_defects.items()})
    failed, _ = _verdict(checks)
    failed = report["failed_checks"] + failed

    report.update({
        "identity_defect": identity_defect,
        "oracle_defects": oracle_defects,
        "fuzzy_time_spectrum_defect": spectrum_defect,
        "grid": {"tau_nodes": grid.factors[0].size, "theta_nodes": grid.factors[1].size},
        "failed_checks": failed,
        "verdict": (Verdict.FAIL if failed else Verdict.PASS).value,
    })
    if failed:
        log.warning("verification_failed", failed_checks=failed)
    return report
