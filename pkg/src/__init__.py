"""
bounded-orbits - Exact hyperplane games, badly approximable certificates and lattice orbits.

This package provides exact-arithmetic kernels for weighted Diophantine
approximation, the hyperplane absolute and potential games with a referee and
players, Alice's level strategy, and a systole simulator for the diagonal flow
on unimodular lattices.
"""

__version__ = "0.1.0"
__license__ = "MIT"

from src.utils.config_loader import get_config
from src.utils.logger import get_logger

__all__ = ["get_config", "get_logger"]
