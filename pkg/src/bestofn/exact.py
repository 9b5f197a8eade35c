"""Exact forward dynamic programming over game states.

The reach probability of every non-absorbing state ``(a, b)`` is pushed
forward one anti-diagonal ``k = a + b`` at a time.  In exact mode all
probabilities on diagonal ``k`` share the denominator ``D_k``, the product
of the first ``k`` round denominators, so the sweep runs on Python integers
and only the ``2n`` absorbing masses are turned into fractions.
"""
import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .core import Constant, ContractViolation, GameState, Polya, Player, round_win_probability

EXACT_CAP = 512


class CapacityError(RuntimeError):
    """Exact computation requested beyond the configured size cap."""


def _fmt(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, (int, np.integer)):
        return int(x)
    return float(x)


def _parse(x):
    if isinstance(x, str):
        num, _, den = x.partition("/")
        return Fraction(int(num), int(den or 1))
    return float(x)


@dataclass(frozen=True, eq=False)
class MarginDistribution:
    """Joint law of (winner, opponent wins).

    ``p1_margin[k]`` is P(Player 1 wins overall and Player 2 won ``k``
    rounds); ``p2_margin`` likewise for Player 2.
    """

    n: int
    p1_margin: tuple
    p2_margin: tuple
    mode: str
    table: object = None

    def __eq__(self, other):
        if not isinstance(other, MarginDistribution):
            return NotImplemented
        return (self.n, self.mode, list(self.p1_margin), list(self.p2_margin)) == (
            other.n, other.mode, list(other.p1_margin), list(other.p2_margin))

    @property
    def exact(self):
        return self.mode == "exact"

    def total(self):
        if self.exact:
            return sum(self.p1_margin) + sum(self.p2_margin)
        return math.fsum(list(self.p1_margin) + list(self.p2_margin))

    def w_pmf(self):
        return [x + y for x, y in zip(self.p1_margin, self.p2_margin)]

    def z_pmf(self):
        """Net-profit law as ``{z: prob}`` with z in ±(n - k)."""
        out = {}
        for k in range(self.n):
            out[self.n - k] = self.p1_margin[k]
            out[k - self.n] = self.p2_margin[k]
        return dict(sorted(out.items()))

    def tau_pmf(self):
        return {self.n + k: w for k, w in enumerate(self.w_pmf())}

    def win_probability(self, player=Player.P1):
        margin = self.p1_margin if player is Player.P1 else self.p2_margin
        return sum(margin) if self.exact else math.fsum(margin)

    def to_dict(self):
        return {
            "n": self.n,
            "mode": self.mode,
            "p1_margin": [_fmt(x) for x in self.p1_margin],
            "p2_margin": [_fmt(x) for x in self.p2_margin],
        }

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d):
        p1 = tuple(_parse(x) for x in d["p1_margin"])
        p2 = tuple(_parse(x) for x in d["p2_margin"])
        return cls(int(d["n"]), p1, p2, d["mode"])

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def expected_values(dist):
    """``(E_Z, E_absZ, E_tau)``; exact fractions in exact mode."""
    n = dist.n
    if dist.exact:
        ez = sum((n - k) * (x - y) for k, (x, y) in enumerate(zip(dist.p1_margin, dist.p2_margin)))
        eabs = sum((n - k) * (x + y) for k, (x, y) in enumerate(zip(dist.p1_margin, dist.p2_margin)))
        etau = sum((n + k) * w for k, w in enumerate(dist.w_pmf()))
        return ez, eabs, etau
    p1 = np.asarray(dist.p1_margin, dtype=float)
    p2 = np.asarray(dist.p2_margin, dtype=float)
    k = np.arange(n)
    ez = math.fsum((n - k) * p1) - math.fsum((n - k) * p2)
    eabs = math.fsum(np.concatenate([(n - k) * p1, (n - k) * p2]))
    etau = math.fsum(np.concatenate([(n + k) * p1, (n + k) * p2]))
    return ez, eabs, etau


def _resolve_mode(regime, mode):
    if mode == "auto":
        return "exact" if regime.is_rational else "float"
    if mode not in ("exact", "float"):
        raise ContractViolation(f"mode must be exact, float or auto, got {mode!r}")
    return mode


def _exact_dp(regime, keep_table):
    n = regime.n
    if isinstance(regime, Constant):
        p = Fraction(regime.p)
        r, s = p.numerator, p.denominator

        def odds(a, b):
            return r, s - r
    else:
        odds = regime.round_odds

    p1 = [None] * n
    p2 = [None] * n
    cur = {0: 1}
    denom = 1
    table = {} if keep_table else None
    for k in range(2 * n - 1):
        nxt = {}
        step_den = None
        for a in sorted(cur):
            b = k - a
            w1, w2 = odds(a, b)
            if step_den is None:
                step_den = w1 + w2
            elif w1 + w2 != step_den:  # pragma: no cover - regimes guarantee it
                raise AssertionError("round denominator must depend on k only")
            mass = cur[a]
            if keep_table:
                table[(a, b)] = Fraction(mass, denom)
            if a == n - 1:
                p1[b] = Fraction(mass * w1, denom * step_den)
            else:
                nxt[a + 1] = nxt.get(a + 1, 0) + mass * w1
            if b == n - 1:
                p2[a] = Fraction(mass * w2, denom * step_den)
            else:
                nxt[a] = nxt.get(a, 0) + mass * w2
        cur = nxt
        denom *= step_den
    return p1, p2, table


def _kernel_args(regime):
    if isinstance(regime, Constant):
        return 0, 0, 0, 0, float(regime.p)
    if isinstance(regime, Polya):
        return 1, regime.n1, regime.n2, 1, 0.0
    return 1, regime.n, regime.n, -1, 0.0


def _float_table(regime):
    n = regime.n
    table = np.zeros((n, n))
    table[0, 0] = 1.0
    for k in range(2 * n - 2):
        for a in range(max(0, k - n + 1), min(k, n - 1) + 1):
            b = k - a
            pw = float(round_win_probability(regime, GameState(a, b, n)))
            if a + 1 < n:
                table[a + 1, b] += table[a, b] * pw
            if b + 1 < n:
                table[a, b + 1] += table[a, b] * (1.0 - pw)
    return table


def exact_distribution(regime, mode="auto", exact_cap=EXACT_CAP, keep_table=False, backend=None):
    """Full joint law of (winner, opponent wins) for ``regime``.

    ``mode="exact"`` needs rational parameters (a float ``p`` is converted
    to its exact binary fraction).  ``keep_table`` also returns the reach
    probability of every non-absorbing state, for path diagnostics.
    """
    mode = _resolve_mode(regime, mode)
    n = regime.n
    if mode == "exact":
        if n > exact_cap:
            raise CapacityError(
                f"exact mode limited to n <= {exact_cap} (got n={n}); use float mode")
        p1, p2, table = _exact_dp(regime, keep_table)
        return MarginDistribution(n, tuple(p1), tuple(p2), "exact", table)
    kind, c1, c2, sign, p = _kernel_args(regime)
    p1, p2 = kernels.get(backend).dp_float(n, kind, c1, c2, sign, p)
    table = _float_table(regime) if keep_table else None
    return MarginDistribution(n, tuple(p1.tolist()), tuple(p2.tolist()), "float", table)


def sample_path_probability(regime, sequence):
    """Probability of an explicit round sequence (True = Player 1 wins).

    The sequence must end the game exactly at its last element.
    """
    state = GameState(0, 0, regime.n)
    prob = Fraction(1) if regime.is_rational else 1.0
    seq = list(sequence)
    for i, won in enumerate(seq):
        if state.absorbing:
            raise ContractViolation(f"sequence overshoots: game ended after {i} rounds")
        pw = round_win_probability(regime, state)
        prob *= pw if won else 1 - pw
        state = GameState(state.a + 1, state.b, state.n) if won else GameState(state.a, state.b + 1, state.n)
    if not state.absorbing:
        raise ContractViolation("sequence ends before the game is decided")
    return prob


__all__ = [
    "CapacityError",
    "EXACT_CAP",
    "MarginDistribution",
    "exact_distribution",
    "expected_values",
    "sample_path_probability",
]
