"""Domain types and the round-by-round game engine.

A match is played between Player 1 and Player 2 until one of them has won
``n`` rounds.  Player 1 is always identified with ball type 1 in the urn
regimes.
"""
import enum
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational


class ContractViolation(ValueError):
    """An operation was called outside its precondition."""


class Player(enum.IntEnum):
    P1 = 1
    P2 = 2


def parse_probability(value):
    """Accept ``"num/den"`` strings (exact) or decimals/floats (float mode)."""
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, float):
        return value
    text = str(value).strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return float(text)


@dataclass(frozen=True)
class Regime:
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ContractViolation(f"target n must be a positive integer, got {self.n!r}")

    @property
    def is_rational(self):
        return True

    def round_odds(self, a, b):
        """Integer weights ``(w1, w2)`` with P(P1 wins) = w1 / (w1 + w2).

        Only defined for regimes with integer urn contents.
        """
        raise NotImplementedError

    def params(self):
        raise NotImplementedError


@dataclass(frozen=True)
class Constant(Regime):
    p: object = Fraction(1, 2)

    def __post_init__(self):
        super().__post_init__()
        p = self.p
        if not isinstance(p, (Rational, float)):
            object.__setattr__(self, "p", parse_probability(p))
            p = self.p
        elif isinstance(p, Rational) and not isinstance(p, Fraction):
            object.__setattr__(self, "p", Fraction(p))
            p = self.p
        if not 0 < p < 1:
            raise ContractViolation(f"Constant regime needs 0 < p < 1, got {p}")

    @property
    def is_rational(self):
        return isinstance(self.p, Fraction)

    @property
    def q(self):
        return 1 - self.p

    def params(self):
        return {"regime": "constant", "n": self.n, "p": self.p}


@dataclass(frozen=True)
class Polya(Regime):
    n1: int = 1
    n2: int = 1

    def __post_init__(self):
        super().__post_init__()
        for name in ("n1", "n2"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1:
                raise ContractViolation(f"Polya regime needs {name} >= 1, got {v!r}")

    def round_odds(self, a, b):
        return self.n1 + a, self.n2 + b

    def params(self):
        return {"regime": "polya", "n": self.n, "n1": self.n1, "n2": self.n2}


@dataclass(frozen=True)
class AntiOkCorral(Regime):
    """Drawing without replacement from ``n`` balls of each type."""

    def round_odds(self, a, b):
        return self.n - a, self.n - b

    def params(self):
        return {"regime": "antiok", "n": self.n}


@dataclass(frozen=True)
class GameState:
    a: int = 0
    b: int = 0
    n: int = 1

    def __post_init__(self):
        if not (0 <= self.a <= self.n and 0 <= self.b <= self.n):
            raise ContractViolation(f"state ({self.a}, {self.b}) outside [0, {self.n}]^2")
        if self.a == self.n and self.b == self.n:
            raise ContractViolation("both players cannot reach n")

    @property
    def round_index(self):
        return self.a + self.b

    @property
    def lead(self):
        """Win-count difference a - b."""
        return self.a - self.b

    @property
    def absorbing(self):
        return self.a == self.n or self.b == self.n

    @property
    def winner(self):
        if self.a == self.n:
            return Player.P1
        if self.b == self.n:
            return Player.P2
        return None

    def remaining_balls(self):
        """Anti-OK urn contents ``(type 1, type 2)`` at this state."""
        return self.n - self.a, self.n - self.b

    def ball_difference(self):
        """Difference of remaining type-1 and type-2 balls; equals ``-lead``."""
        r1, r2 = self.remaining_balls()
        return r1 - r2


@dataclass(frozen=True)
class GameOutcome:
    winner: Player
    opponent_wins: int
    rounds: int
    net_profit: int

    @classmethod
    def from_state(cls, state):
        if not state.absorbing:
            raise ContractViolation("game has not finished")
        if state.winner is Player.P1:
            w = state.b
            return cls(Player.P1, w, state.n + w, state.n - w)
        w = state.a
        return cls(Player.P2, w, state.n + w, w - state.n)

    @classmethod
    def from_net_profit(cls, n, z):
        if z > 0:
            return cls(Player.P1, n - z, 2 * n - z, z)
        return cls(Player.P2, n + z, 2 * n + z, z)


def round_win_probability(regime, state):
    """P(Player 1 wins the next round) from a non-absorbing state."""
    if state.n != regime.n:
        raise ContractViolation(f"state target {state.n} != regime target {regime.n}")
    if state.absorbing:
        raise ContractViolation(f"no further rounds from absorbing state ({state.a}, {state.b})")
    if isinstance(regime, Constant):
        return regime.p
    w1, w2 = regime.round_odds(state.a, state.b)
    return Fraction(w1, w1 + w2)


def step(state, player1_won_round):
    if state.absorbing:
        raise ContractViolation(f"cannot step absorbing state ({state.a}, {state.b})")
    if player1_won_round:
        return GameState(state.a + 1, state.b, state.n)
    return GameState(state.a, state.b + 1, state.n)


def play_match(regime, rng):
    """Play one match, drawing one uniform per round from ``rng.random()``.

    Player 1 takes the round when the uniform falls below the round's win
    probability (as a double), which is the same rule the compiled
    sequential kernels use.
    """
    state = GameState(0, 0, regime.n)
    while not state.absorbing:
        p = float(round_win_probability(regime, state))
        state = step(state, rng.random() < p)
    return GameOutcome.from_state(state)


def regime_from_params(params):
    kind = params["regime"]
    n = int(params["n"])
    if kind == "constant":
        return Constant(n, parse_probability(params["p"]))
    if kind == "polya":
        return Polya(n, int(params["n1"]), int(params["n2"]))
    if kind == "antiok":
        return AntiOkCorral(n)
    raise ContractViolation(f"unknown regime {kind!r}")
