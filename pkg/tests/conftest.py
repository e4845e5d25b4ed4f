"""
Pytest configuration and fixtures for fuzzy de Sitter toolkit testing.
"""

import os
import sys

import numpy as np
import pytest
import structlog

# Project root on the path for `constants` and `src.*` imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from constants import ds2_defaults, ds4_defaults
from src.geometry.ds2 import chart
from src.geometry.ds2.params import DS2Params
from src.geometry.ds4.params import DS4Params
from src.geometry.ds4.provider import ModelProvider
from src.geometry.grid_settings import GridSettings


@pytest.fixture(autouse=True)
def setup_random_seed():
    """Ensure reproducible randomness across tests."""
    np.random.seed(42)


@pytest.fixture(autouse=True)
def reset_logging():
    """CLI runs bind structlog to the captured stderr of their test; unbind it afterwards."""
    yield
    structlog.reset_defaults()


@pytest.fixture
def rng():
    """Seeded generator for random chart points."""
    return np.random.default_rng(42)


@pytest.fixture
def ds2_params():
    """Default 2d parameter set: r=0.5, rho=2 (H^-1 = 1), eps=0.1, M=20."""
    return DS2Params(**ds2_defaults)


@pytest.fixture
def ds2_small():
    """Same physics on the M=10 window used by the quadrature checks."""
    return DS2Params(r=0.5, rho=2.0, epsilon=0.1, M=10)


@pytest.fixture
def ds2_small_grid(ds2_small):
    return chart.chart_grid(ds2_small)


@pytest.fixture
def ds4_params():
    """4d parameters with nu^2 + 1/4 = 4, so the quartic Casimir is 3 at s=1/2."""
    return DS4Params(r=0.5, nu=float(np.sqrt(3.75)), s=ds4_defaults["s"], epsilon=ds4_defaults["epsilon"])


@pytest.fixture
def coarse_settings():
    """Reduced S^3 grid, exact for the L_max <= 1 model family."""
    return GridSettings(n_chi=12, n_s3_theta=12, n_phi=12)


@pytest.fixture
def small_provider(ds4_params):
    return ModelProvider(ds4_params, L_max=1)


@pytest.fixture
def temp_dir(tmp_path):
    """Working directory for written matrices and reports."""
    return str(tmp_path)
