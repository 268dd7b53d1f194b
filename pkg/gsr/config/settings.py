"""
Engine settings loader.

Defaults live on the models, `configs/settings.yaml` overrides them and
`GSR_*` environment variables (or a `.env` file) override the YAML file,
e.g. `GSR_STRUCTURE__ENUMERATION_CAP=10`.
"""

from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

import structlog
import yaml
from pydantic import BaseModel, Field, ValidationError
from pydantic_settings import (
    BaseSettings,
    PydanticBaseSettingsSource,
    SettingsConfigDict,
)

from gsr.errors import ConfigError

logger = structlog.get_logger(__name__)

DEFAULT_CONFIG_PATH = Path("configs/settings.yaml")


class CoreSettings(BaseModel):
    """Limits for instance builders."""
    carrier_cap: int = Field(default=64, ge=1)


class StructureSettings(BaseModel):
    """Limits for ideal enumeration and statement verification."""
    enumeration_cap: int = Field(default=14, ge=1, le=24)
    full_enumeration_max_n: int = Field(default=12, ge=0)
    sample_count: int = Field(default=1_000_000, ge=1)
    max_witnesses: int = Field(default=100, ge=1)
    closure_memo_size: int = Field(default=65_536, ge=1)
    workers: int = Field(default=1, ge=1)


class CensusSettings(BaseModel):
    """Caps and parallelism for the small-order census."""
    max_n: int = Field(default=3, ge=1)
    max_g: int = Field(default=2, ge=1)
    semigroup_cap: int = Field(default=4, ge=1)
    workers: int = Field(default=1, ge=1)
    split_depth: int = Field(default=2, ge=0)


class AccelSettings(BaseModel):
    """Compiled kernel switch."""
    use_numba: bool = True


class LoggingSettings(BaseModel):
    """Logging output."""
    level: str = "INFO"
    json_output: bool = Field(default=False, alias="json")

    model_config = {"populate_by_name": True}


class GsrSettings(BaseSettings):
    """Top-level engine settings."""

    core: CoreSettings = CoreSettings()
    structure: StructureSettings = StructureSettings()
    census: CensusSettings = CensusSettings()
    accel: AccelSettings = AccelSettings()
    logging: LoggingSettings = LoggingSettings()

    model_config = SettingsConfigDict(
        env_prefix="GSR_",
        env_nested_delimiter="__",
        env_file=".env",
        extra="ignore",
    )

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> Tuple[PydanticBaseSettingsSource, ...]:
        # Environment beats the YAML values passed in as init kwargs.
        return env_settings, dotenv_settings, init_settings


def _read_yaml(config_path: Path) -> Dict[str, Any]:
    if not config_path.exists():
        logger.warning("config_not_found", path=str(config_path), fallback="defaults")
        return {}
    try:
        with open(config_path, "r") as f:
            data = yaml.safe_load(f) or {}
    except (OSError, yaml.YAMLError) as e:
        raise ConfigError(f"Failed to read config {config_path}: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError(f"Config {config_path} must be a mapping at top level")
    return data


def load_settings(config_path: Optional[Path] = None) -> GsrSettings:
    """Load settings from YAML plus environment overrides."""
    path = Path(config_path) if config_path is not None else DEFAULT_CONFIG_PATH
    data = _read_yaml(path)
    try:
        settings = GsrSettings(**data)
    except ValidationError as e:
        raise ConfigError(f"Invalid configuration in {path}: {e}") from e
    logger.debug("settings_loaded", path=str(path))
    return settings


_config_path: Optional[Path] = None


@lru_cache(maxsize=1)
def get_settings() -> GsrSettings:
    """Process-wide settings, loaded once from the selected config file."""
    return load_settings(_config_path)


def use_config(config_path: Optional[Path]) -> GsrSettings:
    """Select the config file for get_settings() and load it now.

    Raises:
        ConfigError: the file is malformed
    """
    global _config_path
    _config_path = Path(config_path) if config_path is not None else None
    reset_settings_cache()
    return get_settings()


def reset_settings_cache() -> None:
    """Drop the cached settings so the next get_settings() reloads them."""
    get_settings.cache_clear()
