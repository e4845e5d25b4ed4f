from typing import List

from pydantic import BaseModel, ConfigDict, Field, computed_field

from constants import X0Convention


class DS2Params(BaseModel):
    """
    Physical and numerical parameters of the fuzzy 2d de Sitter hyperboloid.

    H_inv = r * rho holds as an identity, so every parameter set lies on the
    classical-limit path r -> 0, rho -> infinity, r * rho = H^-1.
    """

    model_config = ConfigDict(frozen=True, extra="ignore", allow_inf_nan=False)

    r: float = Field(gt=0)
    rho: float = Field(gt=0)            # principal series, rho = 0 excluded
    epsilon: float = Field(gt=0)
    M: int = Field(ge=0)                # labels m in [-M, M]
    x0_convention: X0Convention = X0Convention.CS

    @computed_field
    @property
    def H_inv(self) -> float:
        return self.r * self.rho

    @property
    def j(self) -> complex:
        """Representation label j = -1/2 + i rho"""
        return complex(-0.5, self.rho)

    @property
    def casimir(self) -> float:
        """-j(j+1) = rho^2 + 1/4"""
        return self.rho ** 2 + 0.25

    @property
    def dim(self) -> int:
        return 2 * self.M + 1

    @property
    def labels(self) -> List[int]:
        return list(range(-self.M, self.M + 1))

    @classmethod
    def from_hinv(cls, H_inv: float, r: float, **kwargs) -> "DS2Params":
        """Point of the constrained path with rho = H_inv / r"""
        return cls(r=r, rho=H_inv / r, **kwargs)
