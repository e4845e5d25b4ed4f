from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from constants import DEFAULT_NODES_PER_UNIT, DEFAULT_S3_NODES, default_theta_count


class GridSettings(BaseModel):
    """Quadrature resolution shared by the 2d and 4d charts"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    nodes_per_unit: int = Field(default=DEFAULT_NODES_PER_UNIT, ge=1)
    n_theta: Optional[int] = Field(default=None, ge=1)     # None -> 4M+5
    n_chi: int = Field(default=DEFAULT_S3_NODES, ge=1)
    n_s3_theta: int = Field(default=DEFAULT_S3_NODES, ge=1)
    n_phi: int = Field(default=DEFAULT_S3_NODES, ge=1)

    def theta_count(self, M: int) -> int:
        return self.n_theta if self.n_theta is not None else default_theta_count(M)
