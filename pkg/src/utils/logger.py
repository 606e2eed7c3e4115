"""
Logging for bounded-orbits.

Module loggers are children of the ``src`` package logger, which owns the
handlers: a rich console on stderr (stdout carries the JSON and CSV artifacts)
and, when the config enables it, a rotating log file.
"""

import logging
import os
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Any, Dict, Optional

from rich.console import Console
from rich.logging import RichHandler

PACKAGE_LOGGER = "src"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"
FILE_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(funcName)s:%(lineno)d - %(message)s"
PLAIN_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
DEFAULT_MAX_BYTES = 10 * 1024 * 1024
DEFAULT_BACKUP_COUNT = 5


def _level(name: Any) -> int:
    level = logging.getLevelName(str(name).upper())
    return level if isinstance(level, int) else logging.INFO


def _console_handler(colorize: bool) -> logging.Handler:
    if colorize:
        handler: logging.Handler = RichHandler(
            console=Console(stderr=True),
            rich_tracebacks=True,
            markup=False,
            show_path=False,
        )
        handler.setFormatter(logging.Formatter("%(message)s"))
    else:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(PLAIN_FORMAT, datefmt=DATE_FORMAT))
    return handler


def _file_handler(path: str, max_bytes: int, backup_count: int) -> logging.Handler:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    handler = RotatingFileHandler(path, maxBytes=max_bytes, backupCount=backup_count, encoding="utf-8")
    handler.setFormatter(logging.Formatter(FILE_FORMAT, datefmt=DATE_FORMAT))
    return handler


def configure(
    level: str = "INFO",
    console: bool = True,
    colorize: bool = True,
    log_file: Optional[str] = None,
    max_bytes: int = DEFAULT_MAX_BYTES,
    backup_count: int = DEFAULT_BACKUP_COUNT,
) -> logging.Logger:
    """
    Replace the handlers of the package logger.

    Args:
        level: Log level name; unknown names fall back to INFO
        console: Log to stderr
        colorize: Use rich for the console handler
        log_file: Rotating log file path, or None
        max_bytes: Rotation size
        backup_count: Rotated files kept

    Returns:
        The package logger
    """
    package = logging.getLogger(PACKAGE_LOGGER)
    for handler in list(package.handlers):
        package.removeHandler(handler)
        handler.close()

    package.setLevel(_level(level))
    if console:
        package.addHandler(_console_handler(colorize))
    if log_file:
        package.addHandler(_file_handler(log_file, max_bytes, backup_count))
    if not package.handlers:
        package.addHandler(logging.NullHandler())
    package.propagate = False
    return package


def setup_logging(config: Dict[str, Any]) -> None:
    """
    Configure logging from the ``logging`` section of a config dump.

    Args:
        config: Configuration dictionary, e.g. ``get_config().model_dump()``
    """
    section = config.get("logging") or {}
    console = section.get("console") or {}
    file = section.get("file") or {}
    level = section.get("level", "INFO")

    package = configure(
        level=level,
        console=console.get("enabled", True),
        colorize=console.get("colorize", True),
        log_file=file.get("path") if file.get("enabled") else None,
        max_bytes=file.get("max_bytes", DEFAULT_MAX_BYTES),
        backup_count=file.get("backup_count", DEFAULT_BACKUP_COUNT),
    )
    package.debug(f"Logging initialized at {level} level")


def get_logger(name: str) -> logging.Logger:
    """
    Get a logger for a module.

    The package logger is configured from ``LOG_LEVEL`` and ``LOG_FILE`` on
    first use; ``setup_logging`` replaces that configuration.

    Example:
        >>> from src.utils.logger import get_logger
        >>> logger = get_logger(__name__)
        >>> logger.info("Play started")
    """
    if not logging.getLogger(PACKAGE_LOGGER).handlers:
        configure(level=os.getenv("LOG_LEVEL", "INFO"), log_file=os.getenv("LOG_FILE"))
    if name != PACKAGE_LOGGER and not name.startswith(PACKAGE_LOGGER + "."):
        name = f"{PACKAGE_LOGGER}.{name}"
    return logging.getLogger(name)
