"""Scalar data of an orbifold and a pair of convex subsets feeding the counting constants."""

from pydantic import BaseModel, Field, field_validator

from .base import KField


class OrbifoldData(BaseModel):
    """Orbifold volume plus per-subset skinning data, all as scalars.

    ``sigma_mass`` is the total skinning mass of the source set D⁻. The ``iota`` values are the
    reciprocity indices (1 or 2) and ``m`` the orders of the pointwise stabilizers.
    """

    kfield: KField = KField.R
    n: int = Field(ge=2)
    volume: float = Field(gt=0)
    sigma_mass: float = Field(default=1.0, gt=0)
    iota_minus: int = 1
    iota_plus: int = 1
    m_minus: float = Field(default=1.0, ge=1)
    m_plus: float = Field(default=1.0, ge=1)

    @field_validator("iota_minus", "iota_plus")
    @classmethod
    def _check_iota(cls, value: int) -> int:
        if value not in (1, 2):
            raise ValueError("reciprocity index must be 1 or 2")
        return value
