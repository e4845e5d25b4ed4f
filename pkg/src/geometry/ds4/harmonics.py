"""
Scalar hyperspherical harmonics on the unit S^3 in the chart

    xi = (cos chi, sin chi sin theta cos phi, sin chi sin theta sin phi, sin chi cos theta)

    Y_Llm = N_Ll sin^l(chi) C^{(l+1)}_{L-l}(cos chi) Y_lm(theta, phi),
    N_Ll = 2^l l! sqrt(2 (L+1) (L-l)! / (pi (L+l+1)!)),

orthonormal for sin^2(chi) sin(theta) dchi dtheta dphi (total volume 2 pi^2).
"""

import math
from typing import Iterator, Tuple

import numpy as np
from scipy.special import eval_gegenbauer, lpmv

from src.core.errors import InvalidCountError


def harmonic_labels(L_max: int) -> Iterator[Tuple[int, int, int]]:
    """(L, l, m) with 0 <= l <= L <= L_max, |m| <= l, in lexicographic order"""
    if L_max < 0:
        raise InvalidCountError(f"L_max must be non-negative, got {L_max}")
    for L in range(L_max + 1):
        for l in range(L + 1):
            for m in range(-l, l + 1):
                yield L, l, m


def radial_normalization(L: int, l: int) -> float:
    return 2 ** l * math.factorial(l) * math.sqrt(
        2 * (L + 1) * math.factorial(L - l) / (math.pi * math.factorial(L + l + 1))
    )


def spherical_harmonic(l: int, m: int, theta, phi) -> np.ndarray:
    """Y_lm(theta, phi) with the Condon-Shortley phase, theta the polar angle"""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    k = abs(m)
    norm = math.sqrt((2 * l + 1) / (4 * math.pi) * math.factorial(l - k) / math.factorial(l + k))
    value = norm * lpmv(k, l, np.cos(theta)) * np.exp(1j * k * phi)
    if m < 0:
        value = (-1) ** k * np.conj(value)
    return value


def hyperspherical_harmonic(L: int, l: int, m: int, chi, theta, phi) -> np.ndarray:
    if not (0 <= l <= L and abs(m) <= l):
        raise InvalidCountError(f"invalid hyperspherical label (L={L}, l={l}, m={m})")
    chi = np.asarray(chi, dtype=float)
    radial = radial_normalization(L, l) * np.sin(chi) ** l * eval_gegenbauer(L - l, l + 1, np.cos(chi))
    return radial * spherical_harmonic(l, m, theta, phi)
