"""
Utility modules for bounded-orbits.

Includes configuration loading, logging, and trace checkpoints.
"""

from src.utils.config_loader import ConfigLoader, get_config, load_run_config, reset_config
from src.utils.logger import configure, get_logger, setup_logging
from src.utils.checkpoint_manager import CheckpointManager

__all__ = [
    "ConfigLoader",
    "get_config",
    "load_run_config",
    "reset_config",
    "configure",
    "get_logger",
    "setup_logging",
    "CheckpointManager",
]
