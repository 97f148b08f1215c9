"""Configuration loader using pydantic-settings."""

import copy
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional

import yaml
from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings, SettingsConfigDict

CONFIG_DIR = Path(__file__).parent.parent.parent / "config"


class AppConfig(BaseModel):
    """Application metadata."""

    name: str = "Kostant Modules Toolkit"
    version: str = "1.0.0"
    environment: str = "production"


class EngineConfig(BaseModel):
    """Limits and defaults for the combinatorial engines."""

    max_elements: int = 2**20
    bruhat_table_threshold: int = 20000
    kl_group_cap: int = 50000
    kl_convention: Literal[
        "maximal_representative", "minimal_representative", "levi_alternating"
    ] = "maximal_representative"
    calibrate_convention: bool = True
    jobs: int = 1
    allow_large: bool = False
    large_quotient_limit: int = 20000


class CacheConfig(BaseModel):
    """Result cache configuration."""

    dir: str = ".kostant_cache"
    enabled: bool = True
    compress: bool = False


class ExcelConfig(BaseModel):
    """Excel output configuration."""

    filename: str = "Kostant_Tables.xlsx"
    autosize_columns: bool = True
    freeze_panes: str = "A2"


class LogConfig(BaseModel):
    """Log output configuration."""

    dir: str = "output/logs"
    enabled: bool = False


class OutputConfig(BaseModel):
    """Output configuration."""

    base_dir: str = "output"
    excel: ExcelConfig = ExcelConfig()
    logs: LogConfig = LogConfig()


class LoggingConfig(BaseModel):
    """Logging configuration."""

    level: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = "INFO"
    format: Literal["structured", "simple"] = "structured"
    include_timestamp: bool = True
    include_context: bool = True


class WallachRule(BaseModel):
    """One rule for the Wallach constant c = slope * rank + offset."""

    type: Literal["A", "B", "C", "D", "E"]
    rank: Optional[int] = None
    node: Literal["any", "first", "spin"] = "any"
    slope: int = 0
    offset: int


class Settings(BaseSettings):
    """Main application settings."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Environment variables
    app_env: Optional[str] = Field(default=None, alias="APP_ENV")
    debug: bool = Field(default=False, alias="DEBUG")
    log_level: Optional[str] = Field(default=None, alias="LOG_LEVEL")

    # Engine overrides from env
    cache_dir: Optional[str] = Field(default=None, alias="KOSTANT_CACHE_DIR")
    max_elements: Optional[int] = Field(default=None, alias="KOSTANT_MAX_ELEMENTS")
    jobs: Optional[int] = Field(default=None, alias="KOSTANT_JOBS")
    kl_convention: Optional[str] = Field(default=None, alias="KOSTANT_KL_CONVENTION")
    allow_large: Optional[bool] = Field(default=None, alias="KOSTANT_ALLOW_LARGE")

    # Loaded configuration
    _config: Optional[Dict[str, Any]] = None

    @property
    def app(self) -> AppConfig:
        """Get application metadata; APP_ENV overrides the environment."""
        config = self._section("app")
        config["environment"] = self.app_env or config.get("environment", "production")
        return AppConfig(**config)

    @property
    def engine(self) -> EngineConfig:
        """Get engine configuration."""
        config = self._section("engine")
        if self.max_elements is not None:
            config["max_elements"] = self.max_elements
        if self.jobs is not None:
            config["jobs"] = self.jobs
        if self.kl_convention:
            config["kl_convention"] = self.kl_convention
        if self.allow_large is not None:
            config["allow_large"] = self.allow_large
        return EngineConfig(**config)

    @property
    def cache(self) -> CacheConfig:
        """Get cache configuration."""
        config = self._section("cache")
        if self.cache_dir:
            config["dir"] = self.cache_dir
        return CacheConfig(**config)

    @property
    def output(self) -> OutputConfig:
        """Get output configuration."""
        return OutputConfig(**self._section("output"))

    @property
    def logging(self) -> LoggingConfig:
        """Get logging configuration."""
        config = self._section("logging")
        if self.log_level:
            config["level"] = self.log_level.upper()
        return LoggingConfig(**config)

    @property
    def labels(self) -> Dict[str, Dict[int, str]]:
        """Letter aliases per diagram name, e.g. labels["F4"][1] == "a"."""
        raw = self._section("labels")
        return {name: {int(k): str(v) for k, v in table.items()} for name, table in raw.items()}

    @property
    def wallach(self) -> List[WallachRule]:
        """Get the Wallach constant rules."""
        return [WallachRule(**rule) for rule in self._get_config().get("wallach", [])]

    def _section(self, name: str) -> Dict[str, Any]:
        """Return a private copy of one YAML section."""
        return copy.deepcopy(self._get_config().get(name) or {})

    def _get_config(self) -> Dict[str, Any]:
        """Load configuration from YAML file."""
        if self._config is None:
            config_path = CONFIG_DIR / "settings.yaml"
            with open(config_path, "r") as f:
                self._config = yaml.safe_load(f) or {}
        return self._config


# Global settings instance
settings = Settings()
