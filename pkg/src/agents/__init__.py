"""
Players for the hyperplane games.

Contains:
- EmptyAlice / PaperAlice / RandomAlice: Alice strategies
- ConcentricBob / ChaserBob / RandomBob: Bob strategies
"""

from src.agents.base_agent import BaseAlice, BaseBob, BasePlayer
from src.agents.alice_agent import EmptyAlice, PaperAlice, RandomAlice, build_alice
from src.agents.bob_agent import ChaserBob, ConcentricBob, RandomBob, build_bob

__all__ = [
    "BasePlayer",
    "BaseAlice",
    "BaseBob",
    "EmptyAlice",
    "PaperAlice",
    "RandomAlice",
    "build_alice",
    "ConcentricBob",
    "ChaserBob",
    "RandomBob",
    "build_bob",
]
