"""
Unit tests for the 4d chart, vector coherent states and the ds4 checks
"""

import math

import numpy as np
import pytest

from constants import ALGEBRAIC_TOLERANCE
from src.core.errors import ConfigError
from src.core.numerics.matrix import adjoint, max_abs_difference, self_adjoint_defect
from src.core.numerics.quadrature import s3_product_grid, s3_unit_vector
from src.expr.nodes import Var
from src.expr.parser import parse
from src.geometry.ds4 import engine
from src.geometry.ds4.provider import ModelProvider, S3Point
from src.geometry.grid_settings import GridSettings


@pytest.mark.unit
class TestEmbedding:
    def test_complex_structure(self, rng):
        xi = s3_unit_vector(rng.uniform(0, math.pi, 50), rng.uniform(0, math.pi, 50),
                            rng.uniform(0, 2 * math.pi, 50))
        j_xi = engine.complex_structure(xi)
        assert np.max(np.abs(np.sum(xi * j_xi, axis=-1))) <= 1e-15
        assert np.allclose(engine.complex_structure(j_xi), -xi)
        assert np.allclose(np.linalg.norm(j_xi, axis=-1), 1.0)

    def test_hyperboloid_identity(self, ds4_params, rng):
        tau = rng.uniform(-20, 20, 500)
        xi = s3_unit_vector(rng.uniform(0, math.pi, 500), rng.uniform(0, math.pi, 500),
                            rng.uniform(0, 2 * math.pi, 500))
        eta = engine.embed4(ds4_params, tau, xi).eta_norm()
        scale = ds4_params.H_inv ** 2 + (ds4_params.r * tau) ** 2
        assert np.max(np.abs(eta + ds4_params.H_inv ** 2) / scale) <= 1e-12

    def test_embed_point(self, ds4_params):
        point = engine.embed4(ds4_params, 2.0, S3Point(0.0, 0.0, 0.0))
        assert float(point.x0) == pytest.approx(1.0)
        assert np.allclose(point.x, [1.0, 0.5, 0.0, 0.0])

    def test_bindings(self, ds4_params):
        bindings = engine.chart_bindings4(ds4_params, 2.0, 0.0, 0.0, 0.0)
        assert bindings["x2"] == pytest.approx(0.5)
        assert bindings["Hinv"] == pytest.approx(0.5)
        assert bindings["nu"] == pytest.approx(math.sqrt(3.75))


@pytest.mark.unit
class TestVectorCoherentStates:
    def test_normalized(self, ds4_params, small_provider, rng):
        for tau in rng.uniform(-2, 2, 5):
            state = engine.vector_cs(ds4_params, small_provider, tau, S3Point(0.8, 1.1, 2.3))
            assert state.coefficients.shape == (2, 10)
            assert state.norm == pytest.approx(1.0, abs=1e-12)

    def test_normalization_positive(self, ds4_params, small_provider):
        value = engine.normalization4(ds4_params, small_provider, 0.3, S3Point(0.5, 0.5, 0.5))
        assert value > 0


@pytest.mark.unit
class TestQuantize4:
    def test_identity_and_time(self, ds4_params, small_provider, coarse_settings):
        grid = engine.chart_grid4(ds4_params, small_provider, coarse_settings)
        one = engine.quantize4(ds4_params, small_provider, lambda tau, chi, theta, phi: 1.0, grid)
        time = engine.quantize4(ds4_params, small_provider, lambda tau, chi, theta, phi: tau, grid)
        assert np.max(np.abs(one.entries - np.eye(10))) <= 1e-10
        assert np.max(np.abs(time.entries - np.diag(small_provider.spectrum))) <= 1e-10
        assert one.labels == small_provider.labels

    def test_x0_expression(self, ds4_params, small_provider, coarse_settings):
        grid = engine.chart_grid4(ds4_params, small_provider, coarse_settings)
        x0 = engine.quantize4(ds4_params, small_provider, Var("x0"), grid)
        expected = ds4_params.r * np.diag(small_provider.spectrum)
        assert np.max(np.abs(x0.entries - expected)) <= 1e-10

    def test_spatial_coordinates_self_adjoint(self, ds4_params, small_provider, coarse_settings):
        grid = engine.chart_grid4(ds4_params, small_provider, coarse_settings)
        for key in engine.SPATIAL_KEYS:
            matrix = engine.quantize4(ds4_params, small_provider, parse(key), grid)
            assert self_adjoint_defect(matrix) <= 1e-12

    def test_linearity(self, ds4_params, small_provider, coarse_settings):
        grid = engine.chart_grid4(ds4_params, small_provider, coarse_settings)
        f = lambda tau, chi, theta, phi: np.cos(chi)
        g = lambda tau, chi, theta, phi: tau * np.sin(chi) * np.cos(theta)
        alpha, beta = 1.5, -0.7
        combined = engine.quantize4(ds4_params, small_provider,
                                    lambda *x: alpha * f(*x) + beta * g(*x), grid)
        separate = (engine.quantize4(ds4_params, small_provider, f, grid) * alpha
                    + engine.quantize4(ds4_params, small_provider, g, grid) * beta)
        assert max_abs_difference(combined, separate) <= 1e-12

    def test_adjoint_covariance(self, ds4_params, small_provider, coarse_settings):
        grid = engine.chart_grid4(ds4_params, small_provider, coarse_settings)
        f = lambda tau, chi, theta, phi: np.exp(1j * phi) * np.sin(chi) * (1 + 0.1 * tau)
        g = lambda tau, chi, theta, phi: np.conj(f(tau, chi, theta, phi))
        a = engine.quantize4(ds4_params, small_provider, f, grid)
        assert max_abs_difference(engine.quantize4(ds4_params, small_provider, g, grid), adjoint(a)) <= 1e-12

    def test_time_function_is_diagonal(self, ds4_params, small_provider, coarse_settings):
        grid = engine.chart_grid4(ds4_params, small_provider, coarse_settings)
        a = engine.quantize4(ds4_params, small_provider, parse("tau^2 + cos(tau)"), grid)
        off_diagonal = a.entries - np.diag(np.diag(a.entries))
        assert np.max(np.abs(off_diagonal)) <= 1e-8
        # the diagonal depends on the label only through its spectrum value
        first_entry = {}
        for tau_j, entry in zip(small_provider.spectrum, np.diag(a.entries).real):
            assert entry == pytest.approx(first_entry.setdefault(tau_j, entry), abs=1e-8)

    def test_grid_window_follows_spectrum(self, ds4_params, coarse_settings):
        provider = ModelProvider(ds4_params, L_max=1, spectrum={(1, 1, 1, 1): 6.0})
        grid = engine.chart_grid4(ds4_params, provider, coarse_settings)
        assert grid.factors[0].upper == pytest.approx(16.0)
        assert grid.rank == 4


@pytest.mark.unit
class TestProviderConsistency:
    def test_orthonormality(self, small_provider):
        assert engine.orthonormality_defect(small_provider, s3_product_grid(12, 12, 12)) <= 1e-10

    def test_consistency_report(self, ds4_params, small_provider, coarse_settings):
        report = engine.provider_consistency(ds4_params, small_provider, coarse_settings)
        assert report["labels"] == 10
        assert report["casimir_constant"] == pytest.approx(3.0)
        assert report["fuzzy_radius_squared"] == pytest.approx(0.75)
        assert report["relation_residual"] <= ALGEBRAIC_TOLERANCE
        assert report["declared_parameters_match"]
        assert report["spectrum_symmetric"]

    def test_asymmetric_spectrum_flagged(self, ds4_params, coarse_settings):
        provider = ModelProvider(ds4_params, L_max=1, spectrum={(1, 1, 1, 1): 6.0})
        assert not engine.provider_consistency(ds4_params, provider, coarse_settings)["spectrum_symmetric"]

    def test_spectrum_symmetry(self):
        assert engine.spectrum_is_symmetric(np.array([-1.0, 0.0, 1.0, 0.0]))
        assert not engine.spectrum_is_symmetric(np.array([-1.0, 2.0]))


@pytest.mark.unit
class TestCasimirPathScan:
    def test_relation_holds_along_path(self):
        report = engine.casimir_path_scan(1.0, 0.5, [1e-1, 1e-2, 1e-3], 1.0)
        assert report["max_relation_residual"] <= 1e-12
        assert report["nu_slope"] == pytest.approx(-1.0, abs=1e-3)
        for row in report["points"]:
            assert row["fuzzy_radius_squared"] == pytest.approx(3.0, rel=1e-12)

    def test_relation_residual_against_target(self, ds4_params):
        # r s sqrt(nu^2 + 1/4) = 0.5 for the fixture parameters
        assert engine.relation_residual(ds4_params) <= ALGEBRAIC_TOLERANCE
        assert engine.relation_residual(ds4_params, H_inv=1.0) == pytest.approx(0.5)

    def test_rejects_bad_points(self):
        with pytest.raises(ConfigError):
            engine.casimir_path_scan(1.0, 0.5, [], 1.0)
        with pytest.raises(ConfigError):
            engine.casimir_path_scan(1.0, 0.5, [-0.1], 1.0)
        with pytest.raises(ConfigError):
            engine.casimir_path_scan(0.1, 0.5, [1.0], 1.0)


@pytest.mark.unit
class TestVerifySuite4:
    def test_coarse_pass(self, ds4_params, small_provider, coarse_settings):
        report = engine.verify_suite(ds4_params, small_provider, coarse_settings)
        assert report["verdict"] == "pass", report["failed_checks"]
        assert report["grid"]["s3_nodes"] == 12 ** 3

    def test_undersampled_sphere_fails(self, ds4_params, small_provider):
        report = engine.verify_suite(ds4_params, small_provider, GridSettings(n_chi=2, n_s3_theta=2, n_phi=2))
        assert report["verdict"] == "fail"
        assert "orthonormality" in report["failed_checks"]

    def test_mismatched_provider_fails_relation(self, ds4_params, coarse_settings):
        declared = ds4_params.model_copy(update={"nu": 3.0})
        provider = ModelProvider(declared, L_max=1)
        report = engine.verify_suite(ds4_params, provider, coarse_settings)
        assert report["provider"]["relation_residual"] > ALGEBRAIC_TOLERANCE
        assert not report["provider"]["declared_parameters_match"]
        assert report["verdict"] == "fail"
        assert "casimir_relation" in report["failed_checks"]

    def test_report_keys(self, ds4_params, small_provider, coarse_settings):
        report = engine.verify_suite(ds4_params, small_provider, coarse_settings)
        assert report["commutator_defects"] == {}
        assert report["casimir_interior_deviation"] is None
        assert report["identity_defect"] <= 1e-10
        assert report["hyperboloid_defect"] <= 1e-8

    @pytest.mark.critical
    @pytest.mark.slow
    def test_default_grid_pass(self, ds4_params):
        provider = ModelProvider(ds4_params, L_max=2)
        report = engine.verify_suite(ds4_params, provider)
        assert report["verdict"] == "pass", report["failed_checks"]
        assert report["provider"]["labels"] == 28
        assert report["identity_defect"] <= 1e-8
