"""
Cylindrical chart (tau, theta) of the 2d de Sitter hyperboloid, the
Gaussian-Fourier basis and expression bindings.

    x0 = r tau,  x1 = r tau cos(theta) - H^-1 sin(theta),  x2 = r tau sin(theta) + H^-1 cos(theta)

with the invariant measure (1/2pi) dtau dtheta.
"""

import math
from dataclasses import dataclass
from typing import Callable, Dict, Optional

import numpy as np

from src.core.numerics.quadrature import ProductGrid, periodic_trapezoid, tau_window_grid
from src.core.quantization.basis import GaussianWeightedBasis
from src.expr.evaluator import evaluate
from src.expr.nodes import Expr
from src.geometry.ds2.params import DS2Params
from src.geometry.grid_settings import GridSettings

# trigonometric degree of the ambient coordinates in theta
ambient_degrees = {"x0": 0, "x1": 1, "x2": 1}


@dataclass(frozen=True)
class AmbientVector:
    x0: np.ndarray
    x1: np.ndarray
    x2: np.ndarray

    def eta_norm(self) -> np.ndarray:
        """(x0)^2 - (x1)^2 - (x2)^2"""
        return self.x0 ** 2 - self.x1 ** 2 - self.x2 ** 2


def embed(params: DS2Params, tau, theta) -> AmbientVector:
    tau = np.asarray(tau, dtype=float)
    theta = np.asarray(theta, dtype=float)
    r, h = params.r, params.H_inv
    cos, sin = np.cos(theta), np.sin(theta)
    return AmbientVector(
        x0=r * tau + 0.0 * theta,
        x1=r * tau * cos - h * sin,
        x2=r * tau * sin + h * cos,
    )


def basis(params: DS2Params) -> GaussianWeightedBasis:
    """phi_m = (eps/pi)^{1/4} exp(-(eps/2)(tau - m)^2) e^{i m theta}, m in [-M, M]"""
    labels = np.arange(-params.M, params.M + 1)

    def fourier(theta):
        theta = np.asarray(theta, dtype=float)
        return np.exp(1j * theta[..., None] * labels)[..., None]

    return GaussianWeightedBasis(labels, params.epsilon, fourier, compact_rank=1,
                                 labels=labels.tolist(), label_offset=params.M)


def theta_normalization(params: DS2Params, tau):
    """N(tau) = sqrt(eps/pi) sum_m exp(-eps (tau - m)^2), a truncated Gaussian train"""
    tau = np.asarray(tau, dtype=float)
    labels = np.arange(-params.M, params.M + 1)
    eps = params.epsilon
    return math.sqrt(eps / math.pi) * np.sum(np.exp(-eps * (tau[..., None] - labels) ** 2), axis=-1)


def chart_grid(params: DS2Params, settings: Optional[GridSettings] = None) -> ProductGrid:
    settings = settings or GridSettings()
    tau = tau_window_grid(params.M, params.epsilon, settings.nodes_per_unit)
    theta = periodic_trapezoid(settings.theta_count(params.M))
    return ProductGrid((tau, theta), (np.ones(tau.size), np.ones(theta.size)), 1.0 / (2.0 * math.pi))


def chart_bindings(params: DS2Params, tau, theta) -> Dict[str, np.ndarray]:
    point = embed(params, tau, theta)
    return {
        "tau": np.asarray(tau, dtype=float),
        "theta": np.asarray(theta, dtype=float),
        "r": params.r,
        "Hinv": params.H_inv,
        "rho": params.rho,
        "epsilon": params.epsilon,
        "pi": math.pi,
        "x0": point.x0,
        "x1": point.x1,
        "x2": point.x2,
    }


def observable(params: DS2Params, expr: Expr, expr_im: Optional[Expr] = None) -> Callable:
    """Chart function f(tau, theta) = expr (+ i expr_im)"""

    def f(tau, theta):
        bindings = chart_bindings(params, tau, theta)
        value = evaluate(expr, bindings)
        if expr_im is not None:
            value = value + 1j * evaluate(expr_im, bindings)
        return value

    return f
