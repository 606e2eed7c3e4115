"""
Base classes for game players.

Provides common functionality for Alice and Bob strategies.
"""

from abc import ABC, abstractmethod
from typing import List, Sequence

from src.models.geometry import Ball, HyperplaneNbhd
from src.models.state import GameState
from src.utils.logger import get_logger

logger = get_logger(__name__)


class BasePlayer(ABC):
    """
    Base class for all players.

    Subclasses set ``role`` and implement ``execute``; ``run`` adds logging
    around each move.
    """

    role: str = "player"

    @property
    def name(self) -> str:
        return self.__class__.__name__

    def _log_failure(self, state: GameState, error: Exception) -> None:
        logger.error(f"{self.name} failed at turn {state.turn_index}: {error}")


class BaseAlice(BasePlayer):
    """Alice: declares hyperplane neighborhoods each turn."""

    role = "alice"

    @abstractmethod
    def execute(self, state: GameState) -> List[HyperplaneNbhd]:
        """
        Choose Alice's move at the current ball.

        Args:
            state: Play in progress

        Returns:
            Neighborhoods declared this turn (empty for an empty move)

        This method must be implemented by subclasses.
        """

    def run(self, state: GameState) -> List[HyperplaneNbhd]:
        """Play a move with logging; errors are logged and re-raised."""
        try:
            family = self.execute(state)
        except Exception as e:
            self._log_failure(state, e)
            raise
        logger.debug(f"turn {state.turn_index}: {self.name} declares {len(family)} neighborhoods")
        return family


class BaseBob(BasePlayer):
    """Bob: answers with a nested ball."""

    role = "bob"

    @abstractmethod
    def execute(self, state: GameState, family: Sequence[HyperplaneNbhd]) -> Ball:
        """
        Choose Bob's next ball.

        Args:
            state: Play in progress
            family: Alice's move this turn

        Returns:
            The next ball

        Raises:
            NoLegalMoveError: If no legal ball was found

        This method must be implemented by subclasses.
        """

    def run(self, state: GameState, family: Sequence[HyperplaneNbhd]) -> Ball:
        """Play a reply with logging; errors are logged and re-raised."""
        try:
            ball = self.execute(state, family)
        except Exception as e:
            self._log_failure(state, e)
            raise
        logger.debug(f"turn {state.turn_index}: {self.name} plays {ball.describe()}")
        return ball
