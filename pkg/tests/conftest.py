import itertools
from fractions import Fraction

import pytest


class ScriptedRng:
    """Replays a fixed list of round winners: True -> 0.0 (Player 1), False -> just below 1."""

    def __init__(self, winners):
        self._it = iter(winners)
        self.draws = 0

    def random(self):
        self.draws += 1
        return 0.0 if next(self._it) else 1.0 - 2.0**-53


def urn_round_probability(kind, n, a, b, n1=1, n2=1):
    """Fraction of type-1 balls, by listing the urn contents ball by ball."""
    if kind == "polya":
        urn = ["1"] * (n1 + a) + ["2"] * (n2 + b)
    else:
        urn = ["1"] * (n - a) + ["2"] * (n - b)
    return Fraction(urn.count("1"), len(urn))


def brute_force_margins(kind, n, p=None, n1=1, n2=1):
    """Sum every terminating sequence by replaying the urn/coin explicitly."""
    p1 = [Fraction(0)] * n
    p2 = [Fraction(0)] * n
    for length in range(n, 2 * n):
        for seq in itertools.product((1, 2), repeat=length):
            a = b = 0
            prob = Fraction(1)
            ok = True
            for i, w in enumerate(seq):
                if a == n or b == n:
                    ok = False
                    break
                if kind == "constant":
                    pw = p
                else:
                    pw = urn_round_probability(kind, n, a, b, n1, n2)
                prob *= pw if w == 1 else 1 - pw
                if w == 1:
                    a += 1
                else:
                    b += 1
            if not ok or not (a == n or b == n):
                continue
            if a == n:
                p1[b] += prob
            else:
                p2[a] += prob
    return p1, p2


@pytest.fixture
def scripted():
    return ScriptedRng


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import LINES
    except ImportError:
        return
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
