"""Comparing empirical and exact laws, and the CLT checks for net profit."""
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr

from .core import ContractViolation
from .formulas import BoundReport


@dataclass(frozen=True)
class EmpiricalLaw:
    support: np.ndarray
    probs: np.ndarray
    sample_size: int

    @classmethod
    def from_summary(cls, summary):
        idx = np.flatnonzero(summary.z_counts)
        total = summary.total
        return cls(idx - summary.n, summary.z_counts[idx] / total, total)

    def as_dict(self):
        return {int(x): float(p) for x, p in zip(self.support, self.probs)}


def _as_law(law):
    if isinstance(law, EmpiricalLaw):
        return law.as_dict()
    if hasattr(law, "z_pmf"):
        return {z: float(p) for z, p in law.z_pmf().items()}
    if hasattr(law, "z_law"):
        return law.z_law()
    return {int(k): float(v) for k, v in dict(law).items()}


def tv_distance(a, b):
    """Half the L1 distance between two laws on the integers.

    Laws may be mappings ``{value: prob}``, :class:`EmpiricalLaw`, exact
    distributions or simulation summaries (both keyed by net profit).
    """
    la, lb = _as_law(a), _as_law(b)
    keys = set(la) | set(lb)
    return 0.5 * math.fsum(abs(la.get(k, 0.0) - lb.get(k, 0.0)) for k in keys)


def standardize_Z(outcomes, n, p):
    """Map net profits ``z`` to ``(p z - mu n) / sqrt(n q)``."""
    p = float(p)
    if not 0.5 <= p < 1 or n < 1:
        raise ContractViolation(f"needs 1/2 <= p < 1 and n >= 1, got p={p}, n={n}")
    q = 1.0 - p
    z = np.asarray(outcomes, dtype=float)
    return (p * z - (p - q) * n) / math.sqrt(n * q)


def normal_cdf(x):
    return ndtr(x)


def ks_statistic(samples, cdf=normal_cdf, weights=None):
    """Sup distance between the empirical CDF of ``samples`` and ``cdf``.

    ``weights`` gives integer multiplicities for each sample value, so a
    histogram can be passed without expanding it.
    """
    x = np.asarray(samples, dtype=float)
    if x.size == 0:
        raise ContractViolation("KS statistic needs at least one sample")
    if weights is None:
        w = np.ones(x.size)
    else:
        w = np.asarray(weights, dtype=float)
        keep = w > 0
        x, w = x[keep], w[keep]
    order = np.argsort(x, kind="stable")
    x, w = x[order], w[order]
    # collapse ties so each distinct value is tested once
    vals, start = np.unique(x, return_index=True)
    wsum = np.add.reduceat(w, start)
    total = wsum.sum()
    upper = np.cumsum(wsum) / total
    lower = upper - wsum / total
    f = cdf(vals)
    return float(max(np.max(upper - f), np.max(f - lower)))


def ks_from_summary(summary, p):
    n = summary.n
    z = np.arange(-n, n + 1)
    return ks_statistic(standardize_Z(z, n, p), weights=summary.z_counts)


def standardize_W(w, n, p):
    """Centre and scale opponent wins by the negative-binomial mean and sd."""
    p = float(p)
    lam = (1.0 - p) / p
    return (np.asarray(w, dtype=float) - lam * n) / math.sqrt(lam * n / p)


def ks_w_from_summary(summary, p):
    """KS distance of standardised ``W`` (taken from both winners) to N(0,1)."""
    n = summary.n
    z = np.arange(-n, n + 1)
    w = n - np.abs(z)
    keep = z != 0
    return ks_statistic(standardize_W(w[keep], n, p), weights=summary.z_counts[keep])


def half_profit_check(n, source):
    """Ratio of the fair-game ``E|Z|`` to ``2 sqrt(n/pi)``, with the
    optional-stopping upper bound on ``E|Z|`` as a :class:`BoundReport`.

    ``source`` is an exact distribution or a simulation summary.
    """
    if hasattr(source, "empirical_E_absZ"):
        eabs = source.empirical_E_absZ
    else:
        from .exact import expected_values

        eabs = expected_values(source)[1]
    ratio = float(eabs) / (2 * math.sqrt(n / math.pi))
    bound = BoundReport("E[|Z|] <= (sqrt(8n+1)-1)/2", (math.sqrt(8 * n + 1) - 1) / 2, eabs, "upper")
    return ratio, bound


def lln_tail_probability(dist, p, eps):
    """Exact P(|Z/n - (1 - q/p)| > eps) from a margin distribution."""
    p = float(p)
    centre = 1.0 - (1.0 - p) / p
    n = dist.n
    return math.fsum(float(prob) for z, prob in dist.z_pmf().items() if abs(z / n - centre) > eps)
