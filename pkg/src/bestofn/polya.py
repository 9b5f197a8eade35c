"""Asymptotics of the Polya-urn game.

With ``N1`` and ``N2`` initial balls the round sequence is an i.i.d.
Bernoulli(xi) sequence with xi ~ Beta(N1, N2), and the scaled net profit
``Z/n`` converges to a variable zeta with an explicit density on [-1, 1].
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

import numpy as np

from .core import ContractViolation, GameOutcome, GameState, step
from .quadrature import QuadratureResult, integrate


def _check_counts(n1, n2):
    if not (isinstance(n1, int) and isinstance(n2, int)) or n1 < 1 or n2 < 1:
        raise ContractViolation(f"ball counts must be positive integers, got ({n1}, {n2})")


def beta_prefactor(n1, n2):
    """Gamma(N1+N2) / (Gamma(N1) Gamma(N2)) as an exact integer."""
    _check_counts(n1, n2)
    return math.factorial(n1 + n2 - 1) // (math.factorial(n1 - 1) * math.factorial(n2 - 1))


def zeta_density(n1, n2, x):
    """Limit density of ``Z/n``; accepts a scalar or an array."""
    _check_counts(n1, n2)
    arr = np.asarray(x, dtype=float)
    if np.any(np.abs(arr) > 1):
        raise ContractViolation("zeta density is supported on [-1, 1]")
    ax = np.abs(arr)
    expo = np.where(arr >= 0, n2 - 1, n1 - 1)
    log_c = math.log(beta_prefactor(n1, n2))
    with np.errstate(divide="ignore", invalid="ignore"):
        log_tail = np.where(expo > 0, expo * np.log1p(-ax), 0.0)
    out = np.exp(log_c + log_tail - (n1 + n2) * np.log(2.0 - ax))
    return float(out) if out.ndim == 0 else out


def polya_win_probability(n1, n2, tol=1e-12):
    """Limiting P(Player 1 wins) as a quadrature of the zeta density on [0, 1]."""
    _check_counts(n1, n2)
    return integrate(lambda x: zeta_density(n1, n2, x), 0.0, 1.0, tol=tol)


def zeta_total_mass(n1, n2, tol=1e-12):
    neg = integrate(lambda x: zeta_density(n1, n2, x), -1.0, 0.0, tol=tol)
    pos = integrate(lambda x: zeta_density(n1, n2, x), 0.0, 1.0, tol=tol)
    return QuadratureResult(neg.value + pos.value, neg.error + pos.error, neg.panels + pos.panels)


def density_grid(n1, n2, points=401):
    xs = np.linspace(-1.0, 1.0, points)
    return xs, zeta_density(n1, n2, xs)


@dataclass(frozen=True)
class PolyaAsymptotics:
    n1: int
    n2: int
    win_prob_p1: float
    density_grid: Optional[tuple] = None


def polya_asymptotics(n1, n2, grid_points=None, tol=1e-12):
    grid = density_grid(n1, n2, grid_points) if grid_points else None
    return PolyaAsymptotics(n1, n2, polya_win_probability(n1, n2, tol).value, grid)


def symmetric_profit_closed_form(n, exact=True):
    """``((2n)! / ((n-1)!^2 2^(2n-1)) - n) / (n - 1)``."""
    if n < 2:
        raise ContractViolation(f"closed form needs n >= 2, got {n}")
    if exact:
        lead = Fraction(math.factorial(2 * n), math.factorial(n - 1) ** 2 * 2 ** (2 * n - 1))
        return (lead - n) / (n - 1)
    log_lead = math.lgamma(2 * n + 1) - 2 * math.lgamma(n) - (2 * n - 1) * math.log(2.0)
    return (math.exp(log_lead) - n) / (n - 1)


def symmetric_profit_integral_exact(n):
    """The profit integral ``(2n)!/(n-1)!^2 * int_0^1 x(1-x)^(n-1)/(2-x)^(2n) dx``
    evaluated as an exact rational.

    With ``u = 1 - x`` and ``t = u/(1+u)`` the integral becomes
    ``int_0^(1/2) t^(n-1)(1-t)^(n-1) - t^n (1-t)^(n-2) dt``, a polynomial.
    """
    if n < 2:
        raise ContractViolation(f"needs n >= 2, got {n}")
    half = Fraction(1, 2)

    def poly_integral(p, m):
        # int_0^{1/2} t^p (1-t)^m dt
        return sum(math.comb(m, i) * (-1) ** i * half ** (p + i + 1) / (p + i + 1) for i in range(m + 1))

    integral = poly_integral(n - 1, n - 1) - poly_integral(n, n - 2)
    return Fraction(math.factorial(2 * n), math.factorial(n - 1) ** 2) * integral


def symmetric_profit_quadrature(n, tol=1e-12):
    log_c = math.lgamma(2 * n + 1) - 2 * math.lgamma(n)

    def f(x):
        with np.errstate(divide="ignore"):
            return x * np.exp(log_c + (n - 1) * np.log1p(-x) - 2 * n * np.log(2.0 - x))

    return integrate(f, 0.0, 1.0, tol=tol)


class PolyaProfit(NamedTuple):
    closed_form: object
    asymptotic: float
    quadrature: Optional[QuadratureResult]


def polya_symmetric_expected_profit(n, tol=1e-10, exact=None):
    """Asymptotic winner's profit for ``N1 = N2 = n``.

    Returns the closed form, its leading asymptotic ``2 sqrt(n/pi) - 1`` and
    (for moderate ``n``) the quadrature of the defining integral.
    """
    if n < 2:
        raise ContractViolation(f"needs n >= 2, got {n}")
    if exact is None:
        exact = n <= 2000
    closed = symmetric_profit_closed_form(n, exact=exact)
    quad = symmetric_profit_quadrature(n, tol=tol) if n <= 2000 else None
    return PolyaProfit(closed, 2 * math.sqrt(n / math.pi) - 1, quad)


def beta_mixture_sampler(n1, n2, target_n, rng, xi=None):
    """One match via the Beta mixture: draw xi ~ Beta(N1, N2) once, then
    i.i.d. Bernoulli(xi) rounds.

    ``xi`` may be fixed for testing; otherwise it is the ratio of two
    integer-shape Gamma variables built from exponentials, drawn in the
    same order as the compiled kernel.
    """
    _check_counts(n1, n2)
    if xi is None:
        g1 = 0.0
        for _ in range(n1):
            g1 += -math.log(1.0 - rng.random())
        g2 = 0.0
        for _ in range(n2):
            g2 += -math.log(1.0 - rng.random())
        xi = g1 / (g1 + g2)
    state = GameState(0, 0, target_n)
    while not state.absorbing:
        state = step(state, rng.random() < xi)
    return GameOutcome.from_state(state)
