"""
Data models for exact geometry, Diophantine certificates, lattices and games.

Contains Pydantic models for:
- Ball / HyperplaneNbhd: Game geometry on R^(2d-1)
- Weight / RationalPoint: Weighted Diophantine data
- StrategyParams / EkRecord: Alice's strategy constants
- GameConfig / GameTrace: Refereed plays
"""

from src.models.enums import (
    BoundednessStatus,
    CertificateStatus,
    GameOutcome,
    GameVariant,
    Ordering,
    StrategyMode,
    VerdictKind,
)
from src.models.errors import (
    BudgetExceededError,
    DimensionMismatchError,
    InternalInvariantError,
    NoLegalMoveError,
    PrecisionExhaustedError,
    SingularBasisError,
    ZeroDenominatorError,
)
from src.models.rational import Rational, format_rational, parse_rational
from src.models.geometry import Ball, HyperplaneNbhd
from src.models.diophantine import (
    CertificateResult,
    EpsilonBound,
    QualityWitness,
    RationalPoint,
    Weight,
)
from src.models.attachments import AttachedHyperplane, DualVector, LinePoint
from src.models.lattice import BoundednessVerdict, SystolePoint, SystoleTrace, UnipotentParams
from src.models.strategy import EkRecord, StrategyParams
from src.models.report import DichotomyReport, SuiteReport
from src.models.run_config import RunConfig
from src.models.state import (
    GameConfig,
    GameState,
    GameTrace,
    TurnFlags,
    TurnRecord,
    WinVerdict,
)

__all__ = [
    # Enums
    "BoundednessStatus",
    "CertificateStatus",
    "GameOutcome",
    "GameVariant",
    "Ordering",
    "StrategyMode",
    "VerdictKind",
    # Errors
    "BudgetExceededError",
    "DimensionMismatchError",
    "InternalInvariantError",
    "NoLegalMoveError",
    "PrecisionExhaustedError",
    "SingularBasisError",
    "ZeroDenominatorError",
    # Rationals
    "Rational",
    "format_rational",
    "parse_rational",
    # Geometry
    "Ball",
    "HyperplaneNbhd",
    # Diophantine
    "CertificateResult",
    "EpsilonBound",
    "QualityWitness",
    "RationalPoint",
    "Weight",
    # Attachments
    "AttachedHyperplane",
    "DualVector",
    "LinePoint",
    # Lattice
    "BoundednessVerdict",
    "SystolePoint",
    "SystoleTrace",
    "UnipotentParams",
    # Strategy
    "EkRecord",
    "StrategyParams",
    # Game
    "GameConfig",
    "GameState",
    "GameTrace",
    "TurnFlags",
    "TurnRecord",
    "WinVerdict",
    # Reports
    "DichotomyReport",
    "SuiteReport",
    # Game files
    "RunConfig",
]
