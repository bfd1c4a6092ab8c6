"""Settings file management."""

import os
from pathlib import Path
from typing import Any

import yaml
from pydantic import ValidationError

from ..errors import ConfigError
from ..logging_config import get_logger
from ..models import Settings

logger = get_logger(__name__)

# Environment variables overriding the settings file
ENV_OVERRIDES: dict[str, str] = {
    "PERPC_SEED": "seed",
    "PERPC_THREADS": "threads",
    "PERPC_BAND_BYTES": "band_bytes",
    "PERPC_EULER_CUTOFF": "euler_cutoff",
    "PERPC_MC_SAMPLES": "monte_carlo_samples",
}


def default_config_path() -> Path:
    """Location of the settings file, ``PERPC_CONFIG`` when set."""
    override = os.environ.get("PERPC_CONFIG")
    if override:
        return Path(override).expanduser()
    return Path.home() / ".config" / "perp-counter" / "settings.yaml"


class SettingsManager:
    """Manager for the persisted run settings."""

    def __init__(self, config_path: Path | None = None) -> None:
        """Initialize settings manager.

        Args:
            config_path: Path to configuration file
        """
        if config_path is None:
            config_path = default_config_path()

        self.config_path = config_path
        self.settings = Settings()
        self._ensure_config_dir()
        self.load()

    def _ensure_config_dir(self) -> None:
        """Ensure configuration directory exists."""
        self.config_path.parent.mkdir(parents=True, exist_ok=True)

    def load(self) -> None:
        """Load settings from file, writing the defaults when it does not exist."""
        if not self.config_path.exists():
            self.settings = Settings()
            self.save()
            return

        try:
            with open(self.config_path, encoding="utf-8") as f:
                data = yaml.safe_load(f) or {}
            self.settings = Settings(**data.get("settings", {}))
        except (yaml.YAMLError, ValidationError, TypeError) as e:
            logger.warning(f"Error loading settings from {self.config_path}: {e}")
            self.settings = Settings()

    def save(self) -> None:
        """Save settings to file."""
        settings_dict = self.settings.model_dump(mode="json")
        # Remove None values
        settings_dict = {k: v for k, v in settings_dict.items() if v is not None}
        data = {"settings": settings_dict}

        try:
            with open(self.config_path, "w", encoding="utf-8") as f:
                yaml.safe_dump(data, f, default_flow_style=False, sort_keys=True)
        except OSError as e:
            raise ConfigError(f"Error saving settings to {self.config_path}: {e}") from e

    def set_value(self, key: str, value: str) -> Settings:
        """Set one setting from its string form and persist it.

        Args:
            key: Settings field name
            value: New value, validated by the settings model

        Returns:
            The updated settings
        """
        if key not in Settings.model_fields:
            raise ConfigError(f"Unknown setting {key!r}; known: {', '.join(sorted(Settings.model_fields))}")
        data = self.settings.model_dump()
        data[key] = None if value.lower() in {"none", "null", ""} else value
        try:
            self.settings = Settings(**data)
        except ValidationError as e:
            raise ConfigError(f"Invalid value for {key}: {e.errors()[0]['msg']}") from e
        self.save()
        return self.settings

    def effective(self, environ: dict[str, str] | None = None, **flags: Any) -> Settings:
        """Settings with environment overrides and then CLI flags applied.

        Args:
            environ: Environment mapping, ``os.environ`` by default
            **flags: CLI values; None means the flag was not given

        Returns:
            A validated copy; the file is not modified
        """
        environ = dict(os.environ) if environ is None else environ
        data = self.settings.model_dump()
        for env_name, field in ENV_OVERRIDES.items():
            if env_name in environ:
                data[field] = environ[env_name]
        data.update({k: v for k, v in flags.items() if v is not None})
        try:
            return Settings(**data)
        except ValidationError as e:
            raise ConfigError(f"Invalid settings override: {e.errors()[0]['msg']}") from e
