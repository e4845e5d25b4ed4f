"""
Vector coherent-state quantization on the 4d de Sitter hyperboloid in the
chart R x S^3,

    x0 = r tau,  x = r tau xi + H^-1 xi_perp,  xi_perp = J xi,

where J(a, b, c, d) = (-b, a, -d, c) is a fixed orthogonal complex structure
of R^4. The orthonormal family on S^3 and the fuzzy-time spectrum come from
a BasisProvider.
"""

import math
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Sequence, Union

import numpy as np
import structlog

from constants import ALGEBRAIC_TOLERANCE, ORTHONORMALITY_WARNING, QUADRATURE_TOLERANCE, Verdict
from src.core.errors import ConfigError
from src.core.numerics.matrix import (
    ComplexMatrix,
    diagonal,
    identity,
    max_abs_difference,
    self_adjoint_defect,
)
from src.core.numerics.quadrature import ProductGrid, prepend_factor, s3_product_grid, s3_unit_vector, tau_window_grid
from src.core.quantization.basis import CoherentState, GaussianWeightedBasis, Point
from src.core.quantization.engine import coherent_state, compact_overlap, normalization, quantize
from src.data.metrics import ScanRecorder
from src.expr.evaluator import evaluate
from src.expr.nodes import Expr
from src.geometry.ds4.params import DS4Params
from src.geometry.ds4.provider import BasisProvider, S3Point
from src.geometry.grid_settings import GridSettings

log = structlog.get_logger(__name__)

SPATIAL_KEYS = ("x1", "x2", "x3", "x4")


@dataclass(frozen=True)
class AmbientVector4:
    x0: np.ndarray
    x: np.ndarray           # (..., 4)

    def eta_norm(self) -> np.ndarray:
        return self.x0 ** 2 - np.sum(self.x ** 2, axis=-1)


def complex_structure(xi) -> np.ndarray:
    """J xi with J(a, b, c, d) = (-b, a, -d, c); J^2 = -1 and xi . J xi = 0"""
    xi = np.asarray(xi, dtype=float)
    a, b, c, d = np.moveaxis(xi, -1, 0)
    return np.stack([-b, a, -d, c], axis=-1)


def embed4(params: DS4Params, tau, point: Union[S3Point, np.ndarray]) -> AmbientVector4:
    xi = point.xi if isinstance(point, S3Point) else np.asarray(point, dtype=float)
    tau = np.asarray(tau, dtype=float)
    x0 = params.r * tau
    spatial = x0[..., None] * xi + params.H_inv * complex_structure(xi)
    return AmbientVector4(np.broadcast_to(x0, spatial.shape[:-1]), spatial)


def provider_basis(params: DS4Params, provider: BasisProvider) -> GaussianWeightedBasis:
    return GaussianWeightedBasis(provider.spectrum, params.epsilon, provider.evaluate, compact_rank=3,
                                 components=provider.components, labels=provider.labels)


def chart_grid4(params: DS4Params, provider: BasisProvider,
                settings: Optional[GridSettings] = None) -> ProductGrid:
    """tau window around the provider spectrum times the hyperspherical S^3 grid"""
    settings = settings or GridSettings()
    window = float(np.max(np.abs(provider.spectrum))) if provider.count else 0.0
    tau = tau_window_grid(window, params.epsilon, settings.nodes_per_unit)
    return prepend_factor(tau, s3_product_grid(settings.n_chi, settings.n_s3_theta, settings.n_phi))


def chart_bindings4(params: DS4Params, tau, chi, theta, phi) -> Dict[str, np.ndarray]:
    xi = s3_unit_vector(chi, theta, phi)
    point = embed4(params, tau, xi)
    bindings = {
        "tau": np.asarray(tau, dtype=float),
        "chi": np.asarray(chi, dtype=float),
        "theta": np.asarray(theta, dtype=float),
        "phi": np.asarray(phi, dtype=float),
        "r": params.r,
        "Hinv": params.H_inv,
        "nu": params.nu,
        "s": params.s,
        "epsilon": params.epsilon,
        "pi": math.pi,
        "x0": point.x0,
    }
    for i, key in enumerate(SPATIAL_KEYS):
        bindings[key] = point.x[..., i]
    return bindings


def observable4(params: DS4Params, expr: Expr, expr_im: Optional[Expr] = None) -> Callable:
    def f(tau, chi, theta, phi):
        bindings = chart_bindings4(params, tau, chi, theta, phi)
        value = evaluate(expr, bindings)
        if expr_im is not None:
            value = value + 1j * evaluate(expr_im, bindings)
        return value

    return f


def normalization4(params: DS4Params, provider: BasisProvider, tau: float, point: S3Point) -> float:
    """N(tau, xi) = sqrt(eps/pi) sum_J e^{-eps (tau - tau_J)^2} Z_J^dagger Z_J"""
    return normalization(provider_basis(params, provider), Point(tau, point.coords))


def vector_cs(params: DS4Params, provider: BasisProvider, tau: float, point: S3Point) -> CoherentState:
    return coherent_state(provider_basis(params, provider), Point(tau, point.coords))


def quantize4(params: DS4Params, provider: BasisProvider, f: Union[Expr, Callable],
              grid: Optional[ProductGrid] = None) -> ComplexMatrix:
    grid = grid or chart_grid4(params, provider)
    observable = f if callable(f) else observable4(params, f)
    return quantize(provider_basis(params, provider), observable, grid)


def orthonormality_defect(provider: BasisProvider, s3_grid: ProductGrid) -> float:
    gram = compact_overlap(_compact_only(provider), s3_grid)
    return float(np.max(np.abs(gram - np.eye(provider.count))))


def _compact_only(provider: BasisProvider) -> GaussianWeightedBasis:
    # time factor is irrelevant to the Gram matrix of the S^3 profiles
    return GaussianWeightedBasis(provider.spectrum, 1.0, provider.evaluate, compact_rank=3,
                                 components=provider.components, labels=provider.labels)


def spectrum_is_symmetric(spectrum: np.ndarray, tol: float = ALGEBRAIC_TOLERANCE) -> bool:
    values = np.sort(np.asarray(spectrum, dtype=float))
    return bool(np.max(np.abs(values + values[::-1]), initial=0.0) <= tol)


def provider_consistency(params: DS4Params, provider: BasisProvider,
                         settings: Optional[GridSettings] = None) -> Dict:
    settings = settings or GridSettings()
    s3_grid = s3_product_grid(settings.n_chi, settings.n_s3_theta, settings.n_phi)
    defect = orthonormality_defect(provider, s3_grid)
    if defect > ORTHONORMALITY_WARNING:
        log.warning("orthonormality_defect", defect=defect, labels=provider.count)
    declared_match = math.isclose(provider.s, params.s) and math.isclose(provider.nu, params.nu)
    return {
        "labels": provider.count,
        "components": provider.components,
        "orthonormality_defect": defect,
        "casimir_constant": params.quartic_casimir,
        "fuzzy_radius_squared": params.fuzzy_radius_squared,
        "H_inv_squared": params.H_inv ** 2,
        "relation_residual": relation_residual(params, provider=provider),
        "declared_parameters_match": declared_match,
        "spectrum_symmetric": spectrum_is_symmetric(provider.spectrum),
    }


def relation_residual(params: DS4Params, H_inv: Optional[float] = None,
                      provider: Optional[BasisProvider] = None) -> float:
    """
    |H_inv - r s sqrt(nu^2 + 1/4)| for a target H_inv (default: the one of
    params) with (s, nu) as declared by the provider when one is given.
    """
    target = params.H_inv if H_inv is None else H_inv
    s, nu = (provider.s, provider.nu) if provider is not None else (params.s, params.nu)
    return abs(target - params.r * s * math.sqrt(nu ** 2 + 0.25))


def casimir_path_scan(H_inv: float, s: float, r_values: Sequence[float], epsilon: float,
                      recorder: Optional[ScanRecorder] = None) -> Dict:
    """Points of the path r s sqrt(nu^2 + 1/4) = H_inv: nu per r, relation residual, quartic Casimir"""
    if len(r_values) == 0:
        raise ConfigError("r_values is empty")
    if recorder is None:
        recorder = ScanRecorder("r", ("nu", "relation_residual", "quartic_casimir", "fuzzy_radius_squared"))
    for r in r_values:
        if not r > 0:
            raise ConfigError(f"r_values must be positive, got {r}")
        try:
            params = DS4Params.from_hinv(H_inv, r, s, epsilon=epsilon)
        except ValueError as e:
            raise ConfigError(str(e)) from e
        recorder.collect(r, {
            "nu": params.nu,
            "relation_residual": relation_residual(params, H_inv=H_inv),
            "quartic_casimir": params.quartic_casimir,
            "fuzzy_radius_squared": params.fuzzy_radius_squared,
        })
    residuals = recorder.get_series("relation_residual")
    return {
        "model": "ds4",
        "H_inv": H_inv,
        "s": s,
        "epsilon": epsilon,
        "points": recorder.rows(),
        "max_relation_residual": max(residuals),
        "nu_slope": recorder.loglog_slope("nu"),
    }


def _eta_norm(params: DS4Params) -> Callable:
    def f(tau, chi, theta, phi):
        return embed4(params, tau, s3_unit_vector(chi, theta, phi)).eta_norm()
    return f


def hyperboloid_defect(params: DS4Params, provider: BasisProvider, grid: ProductGrid) -> float:
    """max |quantize4(x0^2 - |x|^2) + H^-2 I|"""
    quantized = quantize4(params, provider, _eta_norm(params), grid)
    target = identity(provider.count, labels=quantized.labels) * (-params.H_inv ** 2)
    return max_abs_difference(quantized, target)


def verify_suite(params: DS4Params, provider: BasisProvider, settings: Optional[GridSettings] = None) -> Dict:
    """
    Orthonormality, resolution of the identity, fuzzy-time diagonalization,
    the quantized hyperboloid and the Casimir relation against the provider.

    There are no closed-form commutation relations or operator Casimir in 4d,
    so commutator_defects is empty and casimir_interior_deviation is null.
    """
    consistency = provider_consistency(params, provider, settings)
    grid = chart_grid4(params, provider, settings)
    resolved = quantize4(params, provider, lambda tau, chi, theta, phi: 1.0, grid)
    time_operator = quantize4(params, provider, lambda tau, chi, theta, phi: tau, grid)
    labels = resolved.labels
    identity_defect = max_abs_difference(resolved, identity(provider.count, labels=labels))
    time_defect = max_abs_difference(time_operator, diagonal(provider.spectrum, labels=labels))
    eta_defect = hyperboloid_defect(params, provider, grid)

    checks = {
        "orthonormality": (consistency["orthonormality_defect"], QUADRATURE_TOLERANCE),
        "identity_resolution": (identity_defect, QUADRATURE_TOLERANCE),
        "fuzzy_time_diagonal": (time_defect, QUADRATURE_TOLERANCE),
        "self_adjoint_time": (self_adjoint_defect(time_operator), QUADRATURE_TOLERANCE),
        "hyperboloid": (eta_defect, QUADRATURE_TOLERANCE),
        "casimir_relation": (consistency["relation_residual"], ALGEBRAIC_TOLERANCE),
    }
    failed = [name for name, (value, limit) in checks.items() if not value <= limit]
    verdict = Verdict.FAIL if failed else Verdict.PASS
    if failed:
        log.warning("verification_failed", failed_checks=failed)
    return {
        "model": "ds4",
        "params": params.model_dump(mode="json"),
        "provider": consistency,
        "commutator_defects": {},
        "casimir_interior_deviation": None,
        "identity_defect": identity_defect,
        "fuzzy_time_defect": time_defect,
        "hyperboloid_defect": eta_defect,
        "grid": {"tau_nodes": grid.factors[0].size, "s3_nodes": grid.tail(1).size},
        "thresholds": {"algebraic": ALGEBRAIC_TOLERANCE, "quadrature": QUADRATURE_TOLERANCE},
        "failed_checks": failed,
        "verdict": verdict.value,
    }
