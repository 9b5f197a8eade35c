"""Closed forms and explicit bounds for the first-to-n game.

Evaluators return exact fractions when given rational arguments and floats
otherwise.  Binomial coefficients are exact big integers; large-n float
paths go through ``math.lgamma`` and exponentiate once.
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .core import ContractViolation


def _is_exact(*xs):
    return all(isinstance(x, Rational) for x in xs)


def _as_prob(p):
    if isinstance(p, Rational):
        p = Fraction(p)
    if not 0 < p < 1:
        raise ContractViolation(f"probability must lie in (0, 1), got {p}")
    return p


def _log_comb(n, k):
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


class CatalanTable:
    """Catalan numbers ``C_0 .. C_m`` as Python integers."""

    def __init__(self, values):
        self.values = list(values)

    def __getitem__(self, j):
        return self.values[j]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __repr__(self):
        head = ", ".join(map(str, self.values[:8]))
        return f"CatalanTable([{head}{', ...' if len(self) > 8 else ''}])"


def catalan_numbers(m):
    if m < 0:
        raise ContractViolation(f"m must be >= 0, got {m}")
    vals = [1]
    for j in range(m):
        # C_{j+1} (j+2) = C_j * 2(2j+1)
        vals.append(vals[-1] * 2 * (2 * j + 1) // (j + 2))
    return CatalanTable(vals)


def _catalan_series(n, z):
    """``sum_{j<n} C_j z^j``; exact if ``z`` is a Fraction."""
    if isinstance(z, Fraction):
        cat = catalan_numbers(max(n - 1, 0))
        total = Fraction(0)
        zj = Fraction(1)
        for j in range(n):
            total += cat[j] * zj
            zj *= z
        return total
    term = 1.0
    parts = []
    for j in range(n):
        parts.append(term)
        term *= z * 2 * (2 * j + 1) / (j + 2)
    return math.fsum(parts)


def expected_profit_catalan(n, p):
    """Mean net profit of Player 1: ``n (p - q) sum_{j<n} C_j (pq)^j``."""
    if n < 1:
        raise ContractViolation(f"n must be >= 1, got {n}")
    p = _as_prob(p)
    if p < Fraction(1, 2):
        return -expected_profit_catalan(n, 1 - p)
    q = 1 - p
    return n * (p - q) * _catalan_series(n, p * q)


def catalan_partial_sum_limit_check(n, exact=False):
    """``sum_{j<n} C_j 4^{-j}``; increases to 2 as n grows."""
    if n < 1:
        raise ContractViolation(f"n must be >= 1, got {n}")
    return _catalan_series(n, Fraction(1, 4) if exact else 0.25)


def win_margin_pmf_exact(n, k, theta):
    """P(the theta-player reaches n wins while the opponent has k)."""
    if not 0 <= k <= n - 1:
        raise ContractViolation(f"k must lie in [0, {n - 1}], got {k}")
    theta = _as_prob(theta)
    if _is_exact(theta):
        return math.comb(n + k - 1, k) * theta**n * (1 - theta) ** k
    if n <= 200:
        return math.comb(n + k - 1, k) * theta**n * (1 - theta) ** k
    return math.exp(_log_comb(n + k - 1, k) + n * math.log(theta) + k * math.log1p(-theta))


def negbin_approx_pmf(n, k, p):
    """Negative-binomial main term ``C(n+k-1, n-1) q^k p^n`` for ``k >= 0``."""
    if k < 0:
        raise ContractViolation(f"k must be >= 0, got {k}")
    p = _as_prob(p)
    if p < Fraction(1, 2):
        raise ContractViolation(f"approximation stated for p >= 1/2, got {p}")
    q = 1 - p
    if _is_exact(p) or n + k <= 400:
        return math.comb(n + k - 1, n - 1) * q**k * p**n
    return math.exp(_log_comb(n + k - 1, n - 1) + k * math.log(q) + n * math.log(p))


def approx_error_bound(n, p):
    """``(4pq)^n``, the uniform error of the negative-binomial approximation."""
    p = _as_prob(p)
    return (4 * p * (1 - p)) ** n


@dataclass(frozen=True)
class BoundReport:
    bound_name: str
    bound_value: object
    observed_value: object = None
    direction: str = "upper"

    @property
    def satisfied(self):
        if self.observed_value is None:
            return None
        if self.direction == "upper":
            return self.observed_value <= self.bound_value
        return self.observed_value >= self.bound_value

    def to_dict(self):
        return {
            "bound_name": self.bound_name,
            "direction": self.direction,
            "bound_value": float(self.bound_value),
            "observed_value": None if self.observed_value is None else float(self.observed_value),
            "satisfied": self.satisfied,
        }


def martingale_bounds(n, p, dist=None):
    """Optional-stopping bounds on match length and mean profit.

    Always reports ``E tau <= 2n/(1+|mu|)`` and ``|E Z| <= n|mu|/max(p,q)``;
    for a fair game also ``E tau >= 2n - s`` and ``E|Z| <= s`` with
    ``s = (sqrt(8n+1) - 1)/2``.  Observed values come from ``dist`` when
    given.
    """
    from .exact import expected_values

    p = _as_prob(p)
    q = 1 - p
    mu = abs(p - q)
    obs = expected_values(dist) if dist is not None else (None, None, None)
    ez, eabs, etau = obs
    reports = [
        BoundReport("E[tau] <= 2n/(1+|mu|)", Fraction(2 * n) / (1 + mu) if _is_exact(p) else 2 * n / (1 + mu),
                    etau, "upper"),
        BoundReport("|E[Z]| <= n|mu|/max(p,q)", n * mu / max(p, q), None if ez is None else abs(ez), "upper"),
    ]
    if p == Fraction(1, 2):
        s = (math.sqrt(8 * n + 1) - 1) / 2
        reports.append(BoundReport("E[tau] >= 2n - (sqrt(8n+1)-1)/2", 2 * n - s, etau, "lower"))
        reports.append(BoundReport("E[|Z|] <= (sqrt(8n+1)-1)/2", s, eabs, "upper"))
    return reports


def gamma_race_bound(n, lam):
    """Chernoff bound on P(Gamma(n,1) >= Gamma(n,lam)), ``0 < lam <= 1``."""
    if isinstance(lam, Rational):
        lam = Fraction(lam)
    if not 0 < lam <= 1:
        raise ContractViolation(f"lambda must lie in (0, 1], got {lam}")
    return (4 * lam / (lam + 1) ** 2) ** n


def negbin_tail_bound(m, a):
    """``2 exp(-a^2 / (4(a+m)))`` bounding P(|NegBin(m,1/2) - m| >= a)."""
    if m < 1 or a < 0:
        raise ContractViolation(f"need m >= 1 and a >= 0, got m={m}, a={a}")
    return 2 * math.exp(-a * a / (4 * (a + m)))


def antiok_exact_prob(n, k, exact=True):
    """P(a given player wins the anti-OK game while the other wins n - k rounds)."""
    if not 1 <= k <= n:
        raise ContractViolation(f"k must lie in [1, {n}], got {k}")
    if exact:
        return Fraction(n * math.factorial(2 * n - 1 - k) * math.factorial(n),
                        math.factorial(2 * n) * math.factorial(n - k))
    log_val = (math.log(n) + math.lgamma(2 * n - k) + math.lgamma(n + 1)
               - math.lgamma(2 * n + 1) - math.lgamma(n - k + 1))
    return math.exp(log_val)


def antiok_limit_pmf(k):
    if k < 1:
        raise ContractViolation(f"k must be >= 1, got {k}")
    return Fraction(1, 2 ** (k + 1))


def verify_identity_ident(a, b, m):
    """Check ``sum_k (-1)^k C(a+k,a) C(b,m-k) = (-1)^m C(a-b+m,m)``.

    Returns None outside the hypothesis ``a >= b + m``, ``m >= 0``.
    """
    if m < 0 or b < 0 or a < b + m:
        return None
    lhs = sum((-1) ** k * math.comb(a + k, a) * math.comb(b, m - k) for k in range(m + 1))
    return lhs == (-1) ** m * math.comb(a - b + m, m)


def lemmain_lhs(n, j):
    return sum(math.comb(n - 1 + k, k) * math.comb(n - 1 - j, j - k) * (-1) ** k * (n - k)
               for k in range(j + 1))


def verify_identity_lemmain(n, j, catalan=None):
    """Check the alternating sum against ``(-1)^j n C_j``."""
    if not 0 <= j <= n - 1:
        raise ContractViolation(f"j must lie in [0, {n - 1}], got {j}")
    cat = catalan if catalan is not None else catalan_numbers(j)
    return lemmain_lhs(n, j) == (-1) ** j * n * cat[j]


def verify_am_expansion(p, m):
    """Check ``(p^m - q^m)/(p - q) = sum_i C(m-1-i, i) (-pq)^i`` exactly."""
    p = Fraction(p)
    q = 1 - p
    if p == q or m < 1:
        raise ContractViolation("need p != 1/2 and m >= 1")
    z = p * q
    lhs = (p**m - q**m) / (p - q)
    rhs = sum(math.comb(m - 1 - i, i) * (-z) ** i for i in range((m - 1) // 2 + 1))
    return lhs == rhs
