"""
fuzzyds command-line surface

    fuzzyds {build|verify|quantize|limit-scan} [flags]

Reports are printed as JSON on stdout, logs go to stderr. Exit codes:
0 ok, 2 configuration, 3 file I/O, 4 verification failed, 5 expression.
"""

import argparse
import json
import sys
from typing import Dict, List, Optional

import structlog
from pydantic import ValidationError

from constants import ExitCode, Model, Verdict, X0Convention
from src.cli import commands
from src.cli.config import RunConfig, describe_validation_error
from src.core.errors import ExprError, FuzzyDSError, MatrixFileError, NonFiniteObservableError
from src.utils.logging import LEVELS, configure_logging

log = structlog.get_logger(__name__)

COMMANDS = {
    "build": commands.cmd_build,
    "verify": commands.cmd_verify,
    "quantize": commands.cmd_quantize,
    "limit-scan": commands.cmd_limit_scan,
}

# flags that are not RunConfig fields
_PROCESS_FLAGS = ("command", "config", "log_level", "log_json")


def _add_common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON config file, merged under explicit flags")
    parser.add_argument("--model", choices=[m.value for m in Model])
    parser.add_argument("--r", type=float, help="Fuzziness length r > 0")
    parser.add_argument("--rho", type=float, help="2d principal series rho > 0")
    parser.add_argument("--nu", type=float, help="4d principal series nu > 0")
    parser.add_argument("--s", type=float, help="4d spin, positive half-integer")
    parser.add_argument("--H-inv", dest="H_inv", type=float, help="de Sitter radius for limit scans")
    parser.add_argument("--epsilon", type=float, help="Regularization eps > 0")
    parser.add_argument("--x0-convention", dest="x0_convention", choices=[c.value for c in X0Convention])
    parser.add_argument("--M", type=int, help="2d truncation, labels m in [-M, M]")
    parser.add_argument("--L-max", dest="L_max", type=int, help="4d model provider truncation")
    parser.add_argument("--spectrum-table", dest="spectrum_table", help="JSON fuzzy-time spectrum override")
    parser.add_argument("--nodes-per-unit", dest="nodes_per_unit", type=int)
    parser.add_argument("--n-theta", dest="n_theta", type=int)
    parser.add_argument("--n-chi", dest="n_chi", type=int)
    parser.add_argument("--n-s3-theta", dest="n_s3_theta", type=int)
    parser.add_argument("--n-phi", dest="n_phi", type=int)
    parser.add_argument("--report", help="Also write the report to this file")
    parser.add_argument("--log-level", dest="log_level", choices=LEVELS, default="warning")
    parser.add_argument("--log-json", dest="log_json", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fuzzyds",
        description="Coherent-state quantization of 2d and 4d de Sitter space",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    build = subparsers.add_parser("build", help="Build the ambient-coordinate operators")
    _add_common_arguments(build)
    build.add_argument("--out", help="Output directory (default: ops)")

    verify = subparsers.add_parser("verify", help="Run the verification suite")
    _add_common_arguments(verify)
    verify.add_argument("--matrices", help="Directory with x0.json, x1.json, x2.json to verify")

    quantize = subparsers.add_parser("quantize", help="Quantize an observable expression")
    _add_common_arguments(quantize)
    quantize.add_argument("--f", help="Observable, real part")
    quantize.add_argument("--f-im", dest="f_im", help="Observable, imaginary part")
    quantize.add_argument("--out", help="Output matrix file (default: quantized.json)")

    scan = subparsers.add_parser("limit-scan", help="Scan toward the commutative limit")
    _add_common_arguments(scan)
    scan.add_argument("--r-list", dest="r_list", type=float, nargs="+")
    scan.add_argument("--epsilon-list", dest="epsilon_list", type=float, nargs="+",
                      help="ds2: also scan the Casimir deviation over these eps")
    scan.add_argument("--csv", help="Export the scan table as CSV")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    flags = {key: value for key, value in vars(args).items() if key not in _PROCESS_FLAGS}
    return RunConfig.load(flags, args.config)


def _emit(report: Dict) -> None:
    print(json.dumps(report, indent=2))


def _fail(code: ExitCode, message: str) -> int:
    log.error("command_failed", exit_code=code.value, error=message)
    print(f"fuzzyds: error: {message}", file=sys.stderr)
    return code.value


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level, args.log_json)

    try:
        config = _config_from_args(args)
        log.info("command_start", command=args.command, model=config.model.value)
        report = COMMANDS[args.command](config)
    except ValidationError as e:
        return _fail(ExitCode.CONFIG, describe_validation_error(e))
    except (ExprError, NonFiniteObservableError) as e:
        return _fail(ExitCode.EXPRESSION, str(e))
    except (MatrixFileError, OSError) as e:
        return _fail(ExitCode.IO, str(e))
    except FuzzyDSError as e:
        return _fail(ExitCode.CONFIG, str(e))

    _emit(report)
    if report.get("verdict") == Verdict.FAIL.value:
        log.warning("verdict_fail", failed_checks=report.get("failed_checks"))
        return ExitCode.VERIFY_FAILED.value
    return ExitCode.OK.value
