"""Winner's margin and net profit in first-to-n games.

Three round-probability regimes are supported: a constant per-round
probability, a Polya urn with reinforcement, and drawing without
replacement from ``n + n`` balls (the anti-OK Corral game).
"""
__version__ = "0.1.0"

from .core import (  # noqa: E402
    AntiOkCorral,
    Constant,
    ContractViolation,
    GameOutcome,
    GameState,
    Player,
    Polya,
    play_match,
    round_win_probability,
    step,
)
from .exact import CapacityError, MarginDistribution, exact_distribution, expected_values  # noqa: E402

__all__ = [
    "AntiOkCorral",
    "CapacityError",
    "Constant",
    "ContractViolation",
    "GameOutcome",
    "GameState",
    "MarginDistribution",
    "Player",
    "Polya",
    "exact_distribution",
    "expected_values",
    "play_match",
    "round_win_probability",
    "step",
]
