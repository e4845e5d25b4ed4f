"""
Unit tests for the classical-limit and eps-limit scans
"""

import math

import numpy as np
import pytest

from src.core.errors import ConfigError, TruncationTooSmallError
from src.data.metrics import ScanRecorder
from src.geometry.ds2.limits import casimir_epsilon_scan, classical_limit_scan, commutator_norms
from src.geometry.ds2.params import DS2Params
from tests.fixtures.data_factories import DS2HinvPathFactory

R_VALUES = [1e-1, 1e-2, 1e-3, 1e-4]
EPSILON_VALUES = [1e-1, 1e-2, 1e-3, 1e-4]


@pytest.mark.unit
class TestClassicalLimitScan:
    """Test the r -> 0 scan along r*rho = H^-1."""

    @pytest.mark.critical
    def test_slopes(self):
        report = classical_limit_scan(1.0, R_VALUES, 0.1, 10)
        assert report["slopes"]["x1_x2"] == pytest.approx(2.0, abs=0.02)
        assert report["slopes"]["x0_x1"] == pytest.approx(1.0, abs=0.05)
        assert all(report["monotone"].values())

    def test_norms_vanish(self):
        report = classical_limit_scan(1.0, R_VALUES, 0.1, 10)
        smallest = min(report["points"], key=lambda row: row["r"])
        assert smallest["r"] == 1e-4
        assert max(smallest[key] for key in ("x0_x1", "x0_x2", "x1_x2")) <= 1e-3

    def test_x1_x2_norm_closed_form(self):
        params = DS2Params.from_hinv(1.0, 0.1, epsilon=0.1, M=10)
        norms = commutator_norms(params)
        interior = np.arange(-8, 9)
        expected = math.exp(-0.05) * 0.1 ** 2 * np.linalg.norm(interior)
        assert norms["x1_x2"] == pytest.approx(expected, rel=1e-10)

    def test_path_factory_points(self):
        for _ in range(4):
            params = DS2HinvPathFactory()
            assert params.H_inv == pytest.approx(1.0)

    def test_single_point_has_no_slope(self):
        report = classical_limit_scan(1.0, [0.01], 0.1, 10)
        assert report["slopes"] == {"x0_x1": None, "x0_x2": None, "x1_x2": None}
        assert len(report["points"]) == 1

    def test_uses_given_recorder(self):
        recorder = ScanRecorder("r", ("x0_x1", "x0_x2", "x1_x2"))
        classical_limit_scan(1.0, R_VALUES, 0.1, 10, recorder=recorder)
        assert len(recorder) == 4

    def test_rejects_bad_input(self):
        with pytest.raises(ConfigError):
            classical_limit_scan(1.0, [], 0.1, 10)
        with pytest.raises(ConfigError):
            classical_limit_scan(1.0, [0.1, -0.1], 0.1, 10)
        with pytest.raises(TruncationTooSmallError):
            classical_limit_scan(1.0, [0.1], 0.1, 2)


@pytest.mark.unit
class TestCasimirEpsilonScan:
    """Test the linear-in-eps approach to -r^2 (rho^2 + 1/4)."""

    @pytest.mark.critical
    def test_linear_vanishing(self):
        report = casimir_epsilon_scan(0.5, 2.0, EPSILON_VALUES, 20)
        assert math.isfinite(report["fitted_constant"])
        assert report["fitted_constant"] > 0
        assert report["ratio_spread"] <= 1.1
        smallest = min(report["points"], key=lambda row: row["epsilon"])
        assert smallest["deviation"] <= 1e-3 * 0.25 * 4.25

    def test_deviation_bounded_by_fit(self):
        report = casimir_epsilon_scan(0.5, 2.0, EPSILON_VALUES, 20)
        constant = report["fitted_constant"]
        for row in report["points"]:
            assert row["deviation"] <= 1.1 * constant * row["epsilon"]

    def test_off_centre_label(self):
        report = casimir_epsilon_scan(0.5, 2.0, EPSILON_VALUES, 20, label=5)
        assert report["label"] == 5
        assert report["fitted_constant"] > 0

    def test_rejects_edge_label(self):
        with pytest.raises(ConfigError):
            casimir_epsilon_scan(0.5, 2.0, EPSILON_VALUES, 20, label=19)
