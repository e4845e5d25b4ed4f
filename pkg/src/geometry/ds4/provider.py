"""
Basis providers: orthonormal C^{2s+1}-valued families Z_J on S^3 together
with the fuzzy-time spectrum J -> tau_J they diagonalize.
"""

import json
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Dict, Mapping, Optional, Sequence, Tuple

import numpy as np
import structlog

from src.core.errors import ConfigError, DimensionMismatchError, MatrixFileError
from src.core.numerics.quadrature import s3_unit_vector
from src.geometry.ds4.harmonics import harmonic_labels, hyperspherical_harmonic
from src.geometry.ds4.params import DS4Params

log = structlog.get_logger(__name__)

Label = Tuple[int, ...]


@dataclass(frozen=True)
class S3Point:
    chi: float
    theta: float
    phi: float

    @property
    def xi(self) -> np.ndarray:
        return s3_unit_vector(self.chi, self.theta, self.phi)

    @property
    def coords(self) -> Tuple[float, float, float]:
        return self.chi, self.theta, self.phi


class BasisProvider(ABC):
    """
    Finite orthonormal family on S^3 with a discrete real spectrum.

    Implementations must be pure: evaluate() has no side effects.
    """

    labels: Tuple[Label, ...]
    spectrum: np.ndarray
    s: float
    nu: float

    @property
    def components(self) -> int:
        return int(round(2 * self.s)) + 1

    @property
    def count(self) -> int:
        return len(self.labels)

    @abstractmethod
    def evaluate(self, chi, theta, phi) -> np.ndarray:
        """Z_J(xi) for every label, shape (..., count, components)"""

    def evaluate_at(self, point: S3Point) -> np.ndarray:
        return self.evaluate(*point.coords)

    def tau_of(self, label: Sequence[int]) -> float:
        return float(self.spectrum[self.labels.index(tuple(label))])

    def restrict(self, labels: Sequence[Sequence[int]]) -> "BasisProvider":
        """Sub-family on the given labels, keeping their spectrum values"""
        return RestrictedProvider(self, [tuple(label) for label in labels])


class ModelProvider(BasisProvider):
    """
    Hyperspherical model family Z_(L,l,m,sigma) = Y_Llm e_sigma, labels in
    lexicographic order, with stand-in spectrum tau = m unless overridden.
    """

    def __init__(self, params: DS4Params, L_max: int,
                 spectrum: Optional[Mapping[Label, float]] = None):
        self.s = params.s
        self.nu = params.nu
        self.L_max = L_max
        self.harmonics = tuple(harmonic_labels(L_max))
        comps = params.components
        self.labels = tuple((L, l, m, sigma) for L, l, m in self.harmonics for sigma in range(1, comps + 1))
        default = np.array([float(label[2]) for label in self.labels])
        self.spectrum = _apply_overrides(self.labels, default, spectrum)

    def evaluate(self, chi, theta, phi) -> np.ndarray:
        chi, theta, phi = np.broadcast_arrays(np.asarray(chi, float), np.asarray(theta, float),
                                              np.asarray(phi, float))
        scalars = np.stack([hyperspherical_harmonic(L, l, m, chi, theta, phi) for L, l, m in self.harmonics],
                           axis=-1)
        comps = self.components
        vectors = scalars[..., :, None, None] * np.eye(comps)
        return vectors.reshape(scalars.shape[:-1] + (len(self.harmonics) * comps, comps))


class RestrictedProvider(BasisProvider):
    def __init__(self, parent: BasisProvider, labels: Sequence[Label]):
        missing = [label for label in labels if label not in parent.labels]
        if missing:
            raise ConfigError(f"labels not in the parent family: {missing}")
        if len(set(labels)) != len(labels):
            raise ConfigError("restricted label list has duplicates")
        if not labels:
            raise ConfigError("restricted label list is empty")
        self.parent = parent
        self.s = parent.s
        self.nu = parent.nu
        self.labels = tuple(labels)
        self.indices = np.array([parent.labels.index(label) for label in labels])
        self.spectrum = parent.spectrum[self.indices]

    def evaluate(self, chi, theta, phi) -> np.ndarray:
        return self.parent.evaluate(chi, theta, phi)[..., self.indices, :]


def _apply_overrides(labels: Tuple[Label, ...], default: np.ndarray,
                     spectrum: Optional[Mapping[Label, float]]) -> np.ndarray:
    values = default.copy()
    if not spectrum:
        return values
    for label, tau in spectrum.items():
        label = tuple(label)
        if label not in labels:
            raise ConfigError(f"spectrum table label {list(label)} is not in the basis")
        if not math.isfinite(tau):
            raise ConfigError(f"spectrum value for {list(label)} is not finite")
        values[labels.index(label)] = float(tau)
    log.info("spectrum_override", labels=len(spectrum))
    return values


def load_spectrum_table(path: str) -> Dict[Label, float]:
    """
    Read {"spectrum": [{"label": [L, l, m, sigma], "tau": x}, ...]} into a
    label -> tau map.
    """
    try:
        with open(path, 'r') as f:
            data = json.load(f)
    except OSError as e:
        raise MatrixFileError(f"cannot read spectrum table {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise MatrixFileError(f"malformed spectrum table {path}: {e}") from e

    entries = data.get("spectrum") if isinstance(data, dict) else None
    if not isinstance(entries, list):
        raise ConfigError(f"spectrum table {path} has no 'spectrum' list")
    table: Dict[Label, float] = {}
    for entry in entries:
        try:
            label = tuple(int(v) for v in entry["label"])
            tau = float(entry["tau"])
        except (KeyError, TypeError, ValueError) as e:
            raise ConfigError(f"bad spectrum entry {entry!r}: {e}") from e
        if len(label) != 4:
            raise DimensionMismatchError(f"spectrum labels are (L, l, m, sigma), got {list(label)}")
        table[label] = tau
    return table
