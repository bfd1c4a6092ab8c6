"""Shared fixtures."""

from pathlib import Path

import numpy as np
import pytest

from perp_counter.arith.matrices import Mat2
from perp_counter.services.settings_manager import ENV_OVERRIDES

SEED = 20240607


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator so every randomized test is reproducible."""
    return np.random.default_rng(SEED)


@pytest.fixture
def settings_path(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Path:
    """Point the settings file at a temporary location and clear environment overrides."""
    path = tmp_path / "perpc" / "settings.yaml"
    monkeypatch.setenv("PERPC_CONFIG", str(path))
    for name in ENV_OVERRIDES:
        monkeypatch.delenv(name, raising=False)
    return path


def random_sl2z(rng: np.random.Generator, letters: int = 4, radius: int = 3) -> Mat2:
    """Random element of SL₂(ℤ) as a product of translations and the inversion."""
    s = Mat2(0, -1, 1, 0)
    m = Mat2.identity()
    for _ in range(letters):
        k = int(rng.integers(-radius, radius + 1))
        m = m @ Mat2(1, k, 0, 1) @ s
    return m
