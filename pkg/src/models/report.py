"""
Reports of verification suites and play batches.
"""

from typing import List

from pydantic import BaseModel, Field


class SuiteReport(BaseModel):
    """
    Pass/fail counts of one verification suite.

    Attributes:
        suite: Suite name
        trials: Instances checked
        failures: Instances that violated the property
        examples: Descriptions of the first few failures
        seed: Seed of the random instances
    """

    suite: str
    trials: int = 0
    failures: int = 0
    examples: List[str] = Field(default_factory=list)
    seed: int = 0

    def record(self, ok: bool, description: str = "", keep: int = 5) -> None:
        """Count one trial; keep a description of the first ``keep`` failures."""
        self.trials += 1
        if not ok:
            self.failures += 1
            if len(self.examples) < keep:
                self.examples.append(description)

    @property
    def passed(self) -> bool:
        return self.failures == 0


class DichotomyReport(BaseModel):
    """
    Verdict counts over a batch of plays.

    A play counts as completed when it reached the resolution or the turn
    limit; forfeits, stalls and aborted plays are reported separately.
    """

    games: int = 0
    completed: int = 0
    by_certificate: int = 0
    by_neighborhood: int = 0
    undecided: int = 0
    forfeits: int = 0
    degenerate: int = 0
    aborted: int = 0
    approximate: int = Field(0, description="Plays with subsampled E_k searches")
    run_ids: List[str] = Field(default_factory=list)

    @property
    def alice_fraction(self) -> float:
        """Share of completed plays decided for Alice."""
        if not self.completed:
            return 0.0
        return (self.by_certificate + self.by_neighborhood) / self.completed
