"""
Run configuration: a JSON config file merged under explicit command-line
flags, validated into the parameter models of the selected geometry.
"""

import json
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from constants import DEFAULT_HINV, Model, X0Convention, ds2_defaults, ds4_defaults
from src.core.errors import ConfigError, MatrixFileError
from src.geometry.ds2.params import DS2Params
from src.geometry.ds4.params import DS4Params
from src.geometry.grid_settings import GridSettings


class RunConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    model: Model = Model.DS2

    # physical parameters
    r: Optional[float] = None
    rho: Optional[float] = None
    nu: Optional[float] = None
    s: float = ds4_defaults["s"]
    H_inv: float = DEFAULT_HINV
    epsilon: Optional[float] = None
    x0_convention: X0Convention = X0Convention.CS

    # truncation
    M: int = ds2_defaults["M"]
    L_max: int = ds4_defaults["L_max"]
    spectrum_table: Optional[str] = None

    # grid overrides
    nodes_per_unit: Optional[int] = None
    n_theta: Optional[int] = None
    n_chi: Optional[int] = None
    n_s3_theta: Optional[int] = None
    n_phi: Optional[int] = None

    # command inputs and outputs
    out: Optional[str] = None
    matrices: Optional[str] = None
    report: Optional[str] = None
    csv: Optional[str] = None
    f: Optional[str] = None
    f_im: Optional[str] = None
    r_list: List[float] = Field(default_factory=list)
    epsilon_list: List[float] = Field(default_factory=list)

    @classmethod
    def load(cls, flags: Dict[str, Any], config_path: Optional[str] = None) -> "RunConfig":
        """Config-file values first, then every flag that was given explicitly"""
        merged: Dict[str, Any] = {}
        if config_path:
            merged.update(read_config_file(config_path))
        merged.update({key: value for key, value in flags.items() if value is not None})
        return cls.model_validate(merged)

    def effective_epsilon(self) -> float:
        if self.epsilon is not None:
            return self.epsilon
        return ds2_defaults["epsilon"] if self.model is Model.DS2 else ds4_defaults["epsilon"]

    def _require(self, *names: str) -> None:
        for name in names:
            if getattr(self, name) is None:
                raise ConfigError(f"missing required parameter '{name}' for model {self.model}")

    def ds2_params(self) -> DS2Params:
        self._require("r", "rho")
        return DS2Params(r=self.r, rho=self.rho, epsilon=self.effective_epsilon(), M=self.M,
                         x0_convention=self.x0_convention)

    def ds4_params(self) -> DS4Params:
        self._require("r", "nu")
        return DS4Params(r=self.r, nu=self.nu, s=self.s, epsilon=self.effective_epsilon())

    def grid_settings(self) -> GridSettings:
        overrides = {
            key: getattr(self, key)
            for key in ("nodes_per_unit", "n_theta", "n_chi", "n_s3_theta", "n_phi")
            if getattr(self, key) is not None
        }
        return GridSettings(**overrides)


def read_config_file(path: str) -> Dict[str, Any]:
    try:
        with open(path, 'r') as f:
            data = json.load(f)
    except OSError as e:
        raise MatrixFileError(f"cannot read config file {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"config file {path} is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must hold a JSON object")
    return data


def describe_validation_error(error: ValidationError) -> str:
    """One line per failing field, naming the field"""
    lines = []
    for item in error.errors():
        field = ".".join(str(part) for part in item["loc"]) or "config"
        lines.append(f"{field}: {item['msg']}")
    return "; ".join(lines)
