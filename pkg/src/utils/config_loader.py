"""
Configuration loader for bounded-orbits.
Loads configuration from YAML file and environment variables.
"""

import os
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, Field

from src.models.rational import Rational
from src.models.run_config import RunConfig


class DiophantineConfig(BaseModel):
    """Candidate enumeration limits."""

    candidate_budget: int = Field(2_000_000, gt=0)


class LatticeConfig(BaseModel):
    """Systole computations along the diagonal flow."""

    precision_bits: int = Field(192, gt=0)
    max_precision_bits: int = Field(1536, gt=0)
    horizon: Rational = Fraction(15)
    samples: int = Field(200, gt=1)
    floor: Rational = Fraction(1, 1000)


class StrategyConfig(BaseModel):
    """Alice's level strategy and verdict truncation."""

    candidate_budget: int = Field(200_000, gt=0)
    grid_cap: int = Field(256, gt=0)
    resolution: Rational = Fraction(1, 10**6)
    max_q: int = Field(60, gt=0)


class GameSettings(BaseModel):
    """Play limits."""

    max_turns: int = Field(400, gt=0)
    stall_turns: int = Field(64, gt=0)
    default_seed: int = 0


class TraceConfig(BaseModel):
    """Trace persistence."""

    enabled: bool = False
    save_dir: str = "traces"


class Config(BaseModel):
    """Main configuration model."""

    diophantine: DiophantineConfig = Field(default_factory=DiophantineConfig)
    lattice: LatticeConfig = Field(default_factory=LatticeConfig)
    strategy: StrategyConfig = Field(default_factory=StrategyConfig)
    game: GameSettings = Field(default_factory=GameSettings)
    traces: TraceConfig = Field(default_factory=TraceConfig)
    logging: Dict[str, Any] = Field(default_factory=dict)
    development: Dict[str, Any] = Field(default_factory=dict)


def _section(raw: Dict[str, Any], name: str) -> Dict[str, Any]:
    if not isinstance(raw.get(name), dict):
        raw[name] = {}
    return raw[name]


class ConfigLoader:
    """Load and manage application configuration."""

    def __init__(self, config_path: Optional[str] = None):
        """
        Initialize configuration loader.

        Args:
            config_path: Path to config.yaml file. If None, uses CONFIG_PATH
                or config.yaml, and falls back to defaults when that is missing.
        """
        load_dotenv()

        self._explicit = config_path is not None
        if config_path is None:
            config_path = os.getenv("CONFIG_PATH", "config.yaml")

        self.config_path = Path(config_path)
        self._raw_config: Dict[str, Any] = {}
        self.config: Optional[Config] = None

    def load(self) -> Config:
        """
        Load configuration from file and environment variables.

        Returns:
            Validated configuration object

        Raises:
            FileNotFoundError: If an explicitly given config file doesn't exist
            ValueError: If configuration is invalid
        """
        if self.config_path.exists():
            with open(self.config_path, "r", encoding="utf-8") as f:
                self._raw_config = yaml.safe_load(f) or {}
        elif self._explicit:
            raise FileNotFoundError(f"Configuration file not found: {self.config_path}")
        else:
            self._raw_config = {}

        self._apply_env_overrides()

        try:
            self.config = Config(**self._raw_config)
        except Exception as e:
            raise ValueError(f"Invalid configuration: {e}") from e

        return self.config

    def _apply_env_overrides(self) -> None:
        """Apply environment variable overrides to configuration."""
        raw = self._raw_config

        if log_level := os.getenv("LOG_LEVEL"):
            _section(raw, "logging")["level"] = log_level

        if log_file := os.getenv("LOG_FILE"):
            logging_section = _section(raw, "logging")
            if not isinstance(logging_section.get("file"), dict):
                logging_section["file"] = {}
            logging_section["file"]["path"] = log_file
            logging_section["file"]["enabled"] = True

        if trace_dir := os.getenv("TRACE_DIR"):
            _section(raw, "traces")["save_dir"] = trace_dir

        if budget := os.getenv("CANDIDATE_BUDGET"):
            _section(raw, "diophantine")["candidate_budget"] = int(budget)
            _section(raw, "strategy")["candidate_budget"] = int(budget)

        if bits := os.getenv("PRECISION_BITS"):
            _section(raw, "lattice")["precision_bits"] = int(bits)

        if max_turns := os.getenv("MAX_TURNS"):
            _section(raw, "game")["max_turns"] = int(max_turns)

        if debug := os.getenv("DEBUG"):
            _section(raw, "development")["debug"] = debug.lower() == "true"

    def get(self, key: str, default: Any = None) -> Any:
        """
        Get configuration value by dot-notation key.

        Args:
            key: Configuration key (e.g., "lattice.precision_bits")
            default: Default value if key not found

        Returns:
            Configuration value or default

        Example:
            >>> config_loader = ConfigLoader()
            >>> config_loader.load()
            >>> bits = config_loader.get("lattice.precision_bits")
        """
        if self.config is None:
            raise RuntimeError("Configuration not loaded. Call load() first.")

        value: Any = self.config.model_dump()
        for k in key.split("."):
            if isinstance(value, dict) and k in value:
                value = value[k]
            else:
                return default

        return value


# Global config instance
_config_loader: Optional[ConfigLoader] = None


def get_config(config_path: Optional[str] = None) -> Config:
    """
    Get global configuration instance.

    Args:
        config_path: Path to config file (only used on first call)

    Returns:
        Configuration object

    Example:
        >>> from src.utils.config_loader import get_config
        >>> config = get_config()
        >>> print(config.lattice.precision_bits)
    """
    global _config_loader

    if _config_loader is None:
        _config_loader = ConfigLoader(config_path)
        _config_loader.load()

    return _config_loader.config


def reset_config() -> None:
    """Forget the global configuration (used by tests)."""
    global _config_loader
    _config_loader = None


def load_run_config(path: str, overrides: Optional[Dict[str, Any]] = None) -> RunConfig:
    """
    Load a YAML game file.

    Args:
        path: Game file path
        overrides: Values that replace the file's (None entries are ignored)

    Returns:
        Validated RunConfig

    Raises:
        FileNotFoundError: If the file doesn't exist
        ValueError: If the file is not a mapping or fails validation
    """
    game_path = Path(path)
    if not game_path.exists():
        raise FileNotFoundError(f"Game file not found: {game_path}")
    with open(game_path, "r", encoding="utf-8") as f:
        raw = yaml.safe_load(f) or {}
    if not isinstance(raw, dict):
        raise ValueError(f"Game file must hold a mapping: {game_path}")

    raw.update({k: v for k, v in (overrides or {}).items() if v is not None})
    try:
        return RunConfig(**raw)
    except Exception as e:
        raise ValueError(f"Invalid game file: {e}") from e
