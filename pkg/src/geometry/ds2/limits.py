"""
Parameter scans toward the commutative limit r -> 0 with r*rho = H^-1 held
fixed, and toward the unregularized limit eps -> 0 of the Casimir.
"""

from typing import Dict, Optional, Sequence

import numpy as np
import structlog

from constants import DEFAULT_INTERIOR_MARGIN, MIN_VERIFY_TRUNCATION
from src.core.errors import ConfigError, TruncationTooSmallError
from src.core.numerics.matrix import commutator, interior_norm
from src.data.metrics import ScanRecorder
from src.geometry.ds2.operators import analytic_operators, casimir_ambient, casimir_target
from src.geometry.ds2.params import DS2Params

log = structlog.get_logger(__name__)

NORM_KEYS = ("x0_x1", "x0_x2", "x1_x2")


def _check_positive(name: str, values: Sequence[float]) -> None:
    if len(values) == 0:
        raise ConfigError(f"{name} is empty")
    bad = [v for v in values if not v > 0]
    if bad:
        raise ConfigError(f"{name} must be positive, got {bad}")


def commutator_norms(params: DS2Params, margin: int = DEFAULT_INTERIOR_MARGIN) -> Dict[str, float]:
    x0, x1, x2 = analytic_operators(params)
    return {
        "x0_x1": interior_norm(commutator(x0, x1), margin),
        "x0_x2": interior_norm(commutator(x0, x2), margin),
        "x1_x2": interior_norm(commutator(x1, x2), margin),
    }


def classical_limit_scan(H_inv: float, r_values: Sequence[float], epsilon: float, M: int,
                         margin: int = DEFAULT_INTERIOR_MARGIN, recorder: Optional[ScanRecorder] = None) -> Dict:
    """
    Interior commutator norms along rho = H_inv / r, with least-squares
    log-log slopes in r. Slopes are None for a single point.
    """
    _check_positive("r_values", r_values)
    if M < MIN_VERIFY_TRUNCATION:
        raise TruncationTooSmallError(f"limit scan needs M >= {MIN_VERIFY_TRUNCATION}, got M={M}")

    if recorder is None:
        recorder = ScanRecorder("r", NORM_KEYS)
    for r in r_values:
        params = DS2Params.from_hinv(H_inv, r, epsilon=epsilon, M=M)
        norms = commutator_norms(params, margin)
        recorder.collect(r, norms)
        log.debug("limit_scan_point", r=r, rho=params.rho, **norms)

    slopes = {key: recorder.loglog_slope(key) for key in NORM_KEYS}
    # norms shrink as r decreases, i.e. grow with r
    monotone = {key: recorder.is_monotone(key) for key in NORM_KEYS}
    log.info("limit_scan_done", points=len(recorder), slopes=slopes)
    return {
        "model": "ds2",
        "H_inv": H_inv,
        "epsilon": epsilon,
        "M": M,
        "interior_margin": margin,
        "points": recorder.rows(),
        "slopes": slopes,
        "monotone": monotone,
    }


def casimir_epsilon_scan(r: float, rho: float, epsilon_values: Sequence[float], M: int,
                         label: int = 0, margin: int = DEFAULT_INTERIOR_MARGIN,
                         recorder: Optional[ScanRecorder] = None) -> Dict:
    """
    Deviation of the Casimir diagonal at `label` from -r^2 (rho^2 + 1/4) per
    eps, with the least-squares constant C of deviation ~ C * eps.
    """
    _check_positive("epsilon_values", epsilon_values)
    if abs(label) > M - margin:
        raise ConfigError(f"label {label} is not interior for M={M}, margin={margin}")

    if recorder is None:
        recorder = ScanRecorder("epsilon", ("deviation", "ratio"))
    target: Optional[float] = None
    for epsilon in epsilon_values:
        params = DS2Params(r=r, rho=rho, epsilon=epsilon, M=M)
        casimir = casimir_ambient(params)
        entry = casimir.entry(label, label).real
        target = casimir_target(params)
        deviation = abs(entry - target)
        recorder.collect(epsilon, {"deviation": deviation, "ratio": deviation / epsilon})

    eps = np.asarray(recorder.get_series("epsilon"))
    deviations = np.asarray(recorder.get_series("deviation"))
    constant = float(np.dot(eps, deviations) / np.dot(eps, eps))
    ratios = recorder.get_series("ratio")
    return {
        "model": "ds2",
        "r": r,
        "rho": rho,
        "M": M,
        "label": label,
        "target": target,
        "points": recorder.rows(),
        "fitted_constant": constant,
        "ratio_spread": float(max(ratios) / min(ratios)) if min(ratios) > 0 else None,
    }
