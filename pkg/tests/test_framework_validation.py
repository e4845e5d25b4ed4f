"""
Framework validation tests to ensure testing infrastructure works correctly
"""

import os
import sys

import pytest


def test_framework_setup():
    """Test that the testing framework is properly set up."""
    try:
        import constants
        assert hasattr(constants, 'Model')
        assert hasattr(constants, 'ExitCode')
    except ImportError as e:
        pytest.fail(f"Cannot import constants module: {e}")

    test_dir = os.path.dirname(__file__)
    assert os.path.exists(os.path.join(test_dir, 'unit'))
    assert os.path.exists(os.path.join(test_dir, 'integration'))
    assert os.path.exists(os.path.join(test_dir, 'stress'))
    assert os.path.exists(os.path.join(test_dir, 'benchmarks'))


def test_fixtures_available(ds2_params, ds4_params, small_provider, coarse_settings):
    """Test that the shared fixtures resolve."""
    assert ds2_params.dim == 41
    assert ds4_params.components == 2
    assert small_provider.count == 10
    assert coarse_settings.n_chi == 12


def test_data_factories_available():
    """Test that data factories work correctly."""
    from tests.fixtures.data_factories import DS2HinvPathFactory, DS2ParamsFactory, DS4ParamsFactory

    assert DS2ParamsFactory().M == 10
    assert DS2HinvPathFactory().H_inv == pytest.approx(1.0)
    assert DS4ParamsFactory().s in (0.5, 1.0, 1.5)


@pytest.mark.benchmark
def test_benchmark_capability(benchmark):
    """Test that benchmarking framework works."""
    def simple_operation():
        return sum(range(100))

    result = benchmark(simple_operation)
    assert result == sum(range(100))


@pytest.mark.unit
def test_unit_test_marker():
    assert True


@pytest.mark.integration
def test_integration_test_marker():
    assert True


@pytest.mark.stress
def test_stress_test_marker():
    assert True


@pytest.mark.critical
def test_critical_test_marker():
    assert True


def test_python_version_compatibility():
    """Test Python version compatibility."""
    assert sys.version_info >= (3, 10), f"Python 3.10+ required, got {sys.version_info}"


def test_imports_work():
    """Test that the main modules import and the CLI parser builds."""
    try:
        from src.cli.app import build_parser
        from src.core.quantization.engine import quantize
        from src.geometry.ds4.engine import quantize4

        assert quantize is not None
        assert quantize4 is not None
        assert build_parser().prog == "fuzzyds"
    except ImportError as e:
        pytest.fail(f"Cannot import core modules: {e}")


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
