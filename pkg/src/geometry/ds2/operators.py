"""
Closed-form truncated ambient-coordinate operators of the fuzzy 2d de Sitter
space and their Casimir combination.

    x0 = sign * r * sum m |m><m|
    x1 = c sum (p_m |m+1><m| + h.c.),      c = r e^{-eps/4} / 2
    x2 = (c / i) sum (p_m |m+1><m| - h.c.),  p_m = m + 1/2 + i rho
"""

import math
from typing import NamedTuple

import numpy as np

from src.core.numerics.matrix import ComplexMatrix, adjoint, diagonal
from src.geometry.ds2.params import DS2Params


class AmbientOperators(NamedTuple):
    x0: ComplexMatrix
    x1: ComplexMatrix
    x2: ComplexMatrix


def raising_coefficients(params: DS2Params) -> np.ndarray:
    """c * p_m for m = -M .. M-1, the (m+1, m) entries of x1"""
    m = np.arange(-params.M, params.M, dtype=float)
    c = params.r * math.exp(-params.epsilon / 4.0) / 2.0
    return c * (m + 0.5 + 1j * params.rho)


def raising_operator(params: DS2Params) -> ComplexMatrix:
    """c * sum p_m |m+1><m| truncated to the window"""
    entries = np.zeros((params.dim, params.dim), dtype=np.complex128)
    if params.M > 0:
        entries += np.diag(raising_coefficients(params), k=-1)
    return ComplexMatrix(entries, params.M)


def analytic_operators(params: DS2Params) -> AmbientOperators:
    sign = params.x0_convention.sign
    x0 = diagonal(sign * params.r * np.asarray(params.labels, dtype=float), params.M)
    raising = raising_operator(params)
    lowering = adjoint(raising)
    x1 = raising + lowering
    x2 = (raising - lowering) * (-1j)
    return AmbientOperators(x0, x1, x2)


def casimir_ambient(params: DS2Params) -> ComplexMatrix:
    """(x0)^2 - (x1)^2 - (x2)^2"""
    x0, x1, x2 = analytic_operators(params)
    return x0 @ x0 - x1 @ x1 - x2 @ x2


def casimir_interior_formula(params: DS2Params, m) -> np.ndarray:
    """Diagonal entry r^2 m^2 - r^2 e^{-eps/2} (m^2 + 1/4 + rho^2) away from the window edges"""
    m = np.asarray(m, dtype=float)
    r2 = params.r ** 2
    return r2 * m ** 2 - r2 * math.exp(-params.epsilon / 2.0) * (m ** 2 + 0.25 + params.rho ** 2)


def casimir_target(params: DS2Params) -> float:
    """-r^2 (rho^2 + 1/4), the group-theoretic value reached as eps -> 0"""
    return -params.r ** 2 * params.casimir
