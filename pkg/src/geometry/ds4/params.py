import math

from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator


class DS4Params(BaseModel):
    """
    Parameters of the fuzzy 4d de Sitter space in the principal series (nu, s).

    H_inv = r * s * sqrt(nu^2 + 1/4) holds as an identity, so the commutative
    limit r -> 0, nu -> infinity is a path through parameter sets.
    """

    model_config = ConfigDict(frozen=True, extra="ignore", allow_inf_nan=False)

    r: float = Field(gt=0)
    nu: float = Field(gt=0)
    s: float = Field(gt=0)              # spin, a positive half-integer
    epsilon: float = Field(gt=0)

    @field_validator("s")
    @classmethod
    def _half_integer(cls, value: float) -> float:
        if not float(2 * value).is_integer():
            raise ValueError(f"spin must be a half-integer, got {value}")
        return value

    @computed_field
    @property
    def H_inv(self) -> float:
        return self.r * self.s * math.sqrt(self.nu ** 2 + 0.25)

    @property
    def components(self) -> int:
        """Dimension 2s+1 of the spin space"""
        return int(round(2 * self.s)) + 1

    @property
    def quartic_casimir(self) -> float:
        """(nu^2 + 1/4) s (s+1)"""
        return (self.nu ** 2 + 0.25) * self.s * (self.s + 1)

    @property
    def fuzzy_radius_squared(self) -> float:
        """r^2 s(s+1)(nu^2 + 1/4), which tends to H^-2 along the limit path"""
        return self.r ** 2 * self.quartic_casimir

    @classmethod
    def from_hinv(cls, H_inv: float, r: float, s: float, **kwargs) -> "DS4Params":
        """Point of the constrained path: nu solves r s sqrt(nu^2 + 1/4) = H_inv"""
        ratio = H_inv / (r * s)
        if ratio ** 2 <= 0.25:
            raise ValueError(f"no principal-series nu for H_inv={H_inv}, r={r}, s={s}")
        return cls(r=r, nu=math.sqrt(ratio ** 2 - 0.25), s=s, **kwargs)
