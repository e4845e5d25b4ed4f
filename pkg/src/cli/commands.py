"""
Command implementations. Each command takes a validated RunConfig, writes
its files, and returns the JSON-serializable report printed on stdout.
"""

import os
from typing import Dict, Optional, Tuple

import structlog

from constants import Model
from src.cli.config import RunConfig
from src.core.errors import ConfigError, UnboundIdentifierError
from src.core.numerics.matrix import ComplexMatrix, max_abs_difference, self_adjoint_defect
from src.core.quantization.engine import quantize
from src.data.metrics import ScanRecorder
from src.data.serialization import Serialization
from src.expr.analysis import free_identifiers, trig_degree
from src.expr.evaluator import builtin_constants
from src.expr.nodes import Expr, Var, to_source
from src.expr.parser import parse
from src.geometry.ds2 import chart, limits, verification
from src.geometry.ds2.operators import analytic_operators
from src.geometry.ds2.params import DS2Params
from src.geometry.ds4 import engine as ds4_engine
from src.geometry.ds4.provider import ModelProvider, load_spectrum_table

log = structlog.get_logger(__name__)

DS2_OPERATORS = ("x0", "x1", "x2")
DS4_OPERATORS = ("x0",) + ds4_engine.SPATIAL_KEYS


def _model_provider(config: RunConfig):
    params = config.ds4_params()
    table = load_spectrum_table(config.spectrum_table) if config.spectrum_table else None
    return params, ModelProvider(params, config.L_max, table)


def _meta(config: RunConfig, params, **extra) -> Dict:
    meta = {"model": config.model.value, "params": params.model_dump(mode="json")}
    if config.model is Model.DS2:
        meta["M"] = params.M
    else:
        meta["L_max"] = config.L_max
        meta["grid"] = config.grid_settings().model_dump()
    meta.update(extra)
    return meta


def _write_report(config: RunConfig, report: Dict) -> None:
    if config.report:
        Serialization.save_report(report, config.report)


def cmd_build(config: RunConfig) -> Dict:
    """Analytic ds2 operators, or quadrature-built ds4 ambient coordinates"""
    out_dir = config.out or "ops"
    if config.model is Model.DS2:
        params = config.ds2_params()
        operators = dict(zip(DS2_OPERATORS, analytic_operators(params)))
    else:
        params, provider = _model_provider(config)
        grid = ds4_engine.chart_grid4(params, provider, config.grid_settings())
        operators = {
            name: ds4_engine.quantize4(params, provider, Var(name), grid)
            for name in DS4_OPERATORS
        }

    files = []
    for name, matrix in operators.items():
        path = os.path.join(out_dir, f"{name}.json")
        Serialization.save_matrix(matrix, path, _meta(config, params, operator=name))
        files.append(path)
    dim = next(iter(operators.values())).dim
    log.info("build_done", model=config.model.value, dim=dim, files=len(files))
    return {
        "command": "build",
        "model": config.model.value,
        "params": params.model_dump(mode="json"),
        "dim": dim,
        "files": files,
    }


def _load_triple(directory: str) -> Tuple[Tuple[ComplexMatrix, ...], Dict]:
    matrices = []
    meta: Dict = {}
    for name in DS2_OPERATORS:
        matrix, file_meta = Serialization.load_matrix_with_meta(os.path.join(directory, f"{name}.json"))
        matrices.append(matrix)
        meta = meta or file_meta
    return tuple(matrices), meta


def _params_from_meta(config: RunConfig, meta: Dict) -> DS2Params:
    stored = dict(meta.get("params") or {})
    for key in ("r", "rho", "epsilon"):
        value = getattr(config, key)
        if value is not None:
            stored[key] = value
    stored.setdefault("x0_convention", config.x0_convention.value)
    stored.setdefault("M", config.M)
    for key in ("r", "rho", "epsilon"):
        if key not in stored:
            raise ConfigError(f"missing required parameter '{key}': not in the matrix metadata or the flags")
    return DS2Params(**stored)


def cmd_verify(config: RunConfig) -> Dict:
    """Verification report; the caller maps verdict 'fail' to its exit code"""
    if config.model is Model.DS4:
        params, provider = _model_provider(config)
        report = ds4_engine.verify_suite(params, provider, config.grid_settings())
        report["L_max"] = config.L_max
    elif config.matrices:
        (x0, x1, x2), meta = _load_triple(config.matrices)
        params = _params_from_meta(config, meta)
        report = verification.verify_matrices(x0, x1, x2, params)
        report["source"] = config.matrices
    else:
        report = verification.verify_suite(config.ds2_params(), config.grid_settings())
    report["command"] = "verify"
    log.info("verify_done", model=config.model.value, verdict=report["verdict"])
    _write_report(config, report)
    return report


def _parse_observable(config: RunConfig) -> Tuple[Expr, Optional[Expr]]:
    if not config.f:
        raise ConfigError("missing required parameter 'f' (the observable expression)")
    expr = parse(config.f)
    expr_im = parse(config.f_im) if config.f_im else None
    return expr, expr_im


def _check_bound(exprs, bound) -> None:
    for expr in exprs:
        if expr is None:
            continue
        unbound = sorted(free_identifiers(expr) - set(bound) - set(builtin_constants))
        if unbound:
            raise UnboundIdentifierError(unbound[0])


def _combined_degree(expr: Expr, expr_im: Optional[Expr], degrees) -> Optional[int]:
    values = [trig_degree(e, degrees) for e in (expr, expr_im) if e is not None]
    if any(value is None for value in values):
        return None
    return max(values)


def cmd_quantize(config: RunConfig) -> Dict:
    """Quantize f (+ i f_im) and summarize self-adjointness and band structure"""
    expr, expr_im = _parse_observable(config)
    out = config.out or "quantized.json"
    summary: Dict = {
        "command": "quantize",
        "model": config.model.value,
        "f": to_source(expr),
        "f_im": to_source(expr_im) if expr_im is not None else None,
    }

    if config.model is Model.DS2:
        params = config.ds2_params()
        _check_bound((expr, expr_im), chart.chart_bindings(params, 0.0, 0.0))
        grid = chart.chart_grid(params, config.grid_settings())
        matrix = quantize(chart.basis(params), chart.observable(params, expr, expr_im), grid)
        predicted = _combined_degree(expr, expr_im, chart.ambient_degrees)
        summary["band_width"] = verification.band_width(matrix)
        summary["predicted_band_width"] = predicted
        if expr_im is None:
            reference = verification.reference_operator(params, expr)
            if reference is not None:
                name, analytic = reference
                summary["reference"] = name
                summary["reference_defect"] = max_abs_difference(matrix, analytic)
    else:
        params, provider = _model_provider(config)
        _check_bound((expr, expr_im), ds4_engine.chart_bindings4(params, 0.0, 0.0, 0.0, 0.0))
        grid = ds4_engine.chart_grid4(params, provider, config.grid_settings())
        matrix = ds4_engine.quantize4(params, provider, ds4_engine.observable4(params, expr, expr_im), grid)

    summary["dim"] = matrix.dim
    summary["self_adjoint_defect"] = self_adjoint_defect(matrix)
    summary["params"] = params.model_dump(mode="json")
    summary["file"] = Serialization.save_matrix(matrix, out, _meta(config, params, f=summary["f"],
                                                                    f_im=summary["f_im"]))
    log.info("quantize_done", model=config.model.value, dim=matrix.dim)
    return summary


def cmd_limit_scan(config: RunConfig) -> Dict:
    """Commutator norms (ds2) or Casimir-relation residuals (ds4) along the classical-limit path"""
    if not config.r_list:
        raise ConfigError("missing required parameter 'r_list': the scan needs at least one r value")
    epsilon = config.effective_epsilon()

    if config.model is Model.DS2:
        recorder = ScanRecorder("r", limits.NORM_KEYS)
        report = limits.classical_limit_scan(config.H_inv, config.r_list, epsilon, config.M, recorder=recorder)
        if config.epsilon_list:
            params = config.ds2_params()
            report["casimir_epsilon_scan"] = limits.casimir_epsilon_scan(
                params.r, params.rho, config.epsilon_list, params.M)
    else:
        recorder = ScanRecorder("r", ("nu", "relation_residual", "quartic_casimir", "fuzzy_radius_squared"))
        report = ds4_engine.casimir_path_scan(config.H_inv, config.s, config.r_list, epsilon, recorder=recorder)

    if config.csv:
        report["csv"] = recorder.export_csv(config.csv)
    report["command"] = "limit-scan"
    _write_report(config, report)
    return report
