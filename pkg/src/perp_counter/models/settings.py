"""Application settings model."""

from pathlib import Path

from pydantic import BaseModel, Field


class Settings(BaseModel):
    """Tunable parameters persisted in the settings file."""

    seed: int = 20240607
    threads: int = Field(default=1, ge=1)
    band_bytes: int = Field(default=512 * 1024 * 1024, gt=0)
    euler_cutoff: int = Field(default=50_000_000, ge=1000)
    zeta_tolerance: float = Field(default=1e-9, gt=0)
    monte_carlo_samples: int = Field(default=10_000_000, ge=1000)
    svg_samples: int = Field(default=512, ge=2)
    format_version: int = 1
    out_dir: Path | None = None
