"""Reproducible Monte Carlo for the first-to-n game.

A run of ``samples`` matches is split into ``partitions`` contiguous index
ranges.  Match ``j`` always draws from the stream ``(seed, j)`` (see
``bestofn.rng``), and partial summaries are merged by integer addition, so
the summary is bit-identical for any partition count or worker count.
"""
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _accel, kernels, rng as rngmod
from .core import Constant, ContractViolation, GameOutcome, GameState, Polya, step

SAMPLERS = ("sequential", "poisson_race", "beta_mixture")


@dataclass(frozen=True)
class SimulationPlan:
    regime: object
    samples: int
    seed: int = 0
    partitions: int = 1
    sampler: str = "sequential"

    def __post_init__(self):
        if self.samples < 0:
            raise ContractViolation("samples must be >= 0")
        if self.partitions < 1:
            raise ContractViolation("partitions must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ContractViolation("seed must be an unsigned 64-bit integer")
        if self.sampler not in SAMPLERS:
            raise ContractViolation(f"unknown sampler {self.sampler!r}; choose from {SAMPLERS}")
        if self.sampler == "poisson_race" and not isinstance(self.regime, Constant):
            raise ContractViolation("poisson_race sampler requires the constant regime")
        if self.sampler == "beta_mixture" and not isinstance(self.regime, Polya):
            raise ContractViolation("beta_mixture sampler requires the Polya regime")

    def ranges(self):
        base, extra = divmod(self.samples, self.partitions)
        start = 0
        for i in range(self.partitions):
            stop = start + base + (1 if i < extra else 0)
            yield start, stop
            start = stop


@dataclass(frozen=True, eq=False)
class SimulationSummary:
    """Counts of net profit ``z`` stored at index ``z + n``."""

    n: int
    z_counts: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __eq__(self, other):
        return (isinstance(other, SimulationSummary) and self.n == other.n
                and np.array_equal(self.z_counts, other.z_counts))

    @property
    def total(self):
        return int(self.z_counts.sum())

    @property
    def counts(self):
        """``{(winner, opponent_wins): count}`` with winner 1 or 2."""
        out = {}
        for idx in np.flatnonzero(self.z_counts):
            z = int(idx) - self.n
            o = GameOutcome.from_net_profit(self.n, z)
            out[(int(o.winner), o.opponent_wins)] = int(self.z_counts[idx])
        return out

    def _moment(self, f):
        if self.total == 0:
            return float("nan")
        z = np.arange(-self.n, self.n + 1)
        w = self.z_counts
        return math.fsum((f(z) * w).tolist()) / self.total

    @property
    def empirical_E_Z(self):
        return self._moment(lambda z: z.astype(float))

    @property
    def empirical_E_absZ(self):
        return self._moment(lambda z: np.abs(z).astype(float))

    @property
    def empirical_E_tau(self):
        return self._moment(lambda z: (2 * self.n - np.abs(z)).astype(float))

    def z_law(self):
        """Empirical pmf ``{z: freq}`` over observed values."""
        t = self.total
        return {int(i) - self.n: int(c) / t for i, c in enumerate(self.z_counts) if c}

    def merge(self, other):
        if other.n != self.n:
            raise ContractViolation("cannot merge summaries for different n")
        return SimulationSummary(self.n, self.z_counts + other.z_counts, dict(self.metadata))

    def results_dict(self):
        moments = {}
        if self.total:
            moments = {
                "empirical_E_Z": self.empirical_E_Z,
                "empirical_E_absZ": self.empirical_E_absZ,
                "empirical_E_tau": self.empirical_E_tau,
            }
        return {
            "n": self.n,
            "total": self.total,
            "counts": [
                {"winner": w, "opponent_wins": k, "count": c}
                for (w, k), c in sorted(self.counts.items())
            ],
            **moments,
        }

    def to_json(self):
        return json.dumps({"plan": self.metadata, "results": self.results_dict()}, sort_keys=True)


def _partition_counts(plan, start, stop, backend):
    k = kernels.get(backend)
    r = plan.regime
    n = r.n
    if stop <= start:
        return np.zeros(2 * n + 1, np.int64)
    seed = plan.seed
    if plan.sampler == "sequential":
        if isinstance(r, Constant):
            return k.seq_constant(n, rngmod.bernoulli_threshold(r.p), seed, start, stop)
        if isinstance(r, Polya):
            return k.seq_urn(n, r.n1, r.n2, 1, seed, start, stop)
        return k.seq_urn(n, n, n, -1, seed, start, stop)
    if plan.sampler == "poisson_race":
        p = float(r.p)
        return k.poisson_race(n, (1.0 - p) / p, seed, start, stop)
    return k.beta_mixture(n, r.n1, r.n2, seed, start, stop)


def plan_metadata(plan):
    meta = {key: (f"{v.numerator}/{v.denominator}" if isinstance(v, Fraction) else v)
            for key, v in plan.regime.params().items()}
    meta.update(seed=plan.seed, samples=plan.samples, partitions=plan.partitions,
                sampler=plan.sampler, rng_algorithm=rngmod.ALGORITHM)
    return meta


def run(plan, backend=None, workers=None):
    """Execute ``plan`` and return the merged summary."""
    workers = workers or _accel.worker_count()
    ranges = list(plan.ranges())
    if workers > 1 and len(ranges) > 1:
        with ThreadPoolExecutor(max_workers=min(workers, len(ranges))) as pool:
            parts = list(pool.map(lambda rg: _partition_counts(plan, rg[0], rg[1], backend), ranges))
    else:
        parts = [_partition_counts(plan, a, b, backend) for a, b in ranges]
    total = np.zeros(2 * plan.regime.n + 1, np.int64)
    for part in parts:
        total = total + part
    return SimulationSummary(plan.regime.n, total, plan_metadata(plan))


def poisson_race_sample(n, p, rng):
    """One match from two Poisson processes raced to ``n`` arrivals.

    Player 1's process has rate 1 and Player 2's has rate ``q/p``; only the
    two next-arrival times are kept.
    """
    p = float(p)
    if not 0 < p < 1:
        raise ContractViolation(f"p must lie in (0, 1), got {p}")
    lam = (1.0 - p) / p
    tx = -math.log(1.0 - rng.random())
    ty = -math.log(1.0 - rng.random()) / lam
    state = GameState(0, 0, n)
    while True:
        x_first = tx < ty
        state = step(state, x_first)
        if state.absorbing:
            return GameOutcome.from_state(state)
        if x_first:
            tx += -math.log(1.0 - rng.random())
        else:
            ty += -math.log(1.0 - rng.random()) / lam


def race_times(n, p, rng):
    """``(tau_X, tau_Y)``: n-th arrival times of the rate-1 and rate-q/p processes."""
    p = float(p)
    lam = (1.0 - p) / p
    tx = sum(-math.log(1.0 - rng.random()) for _ in range(n))
    ty = sum(-math.log(1.0 - rng.random()) / lam for _ in range(n))
    return tx, ty


def negbin_direct_sample(n, p, rng):
    """Failures before the n-th success, as a sum of n geometric variables."""
    p = float(p)
    if not 0 < p < 1:
        raise ContractViolation(f"p must lie in (0, 1), got {p}")
    log_q = math.log(1.0 - p)
    return sum(int(math.floor(math.log(1.0 - rng.random()) / log_q)) for _ in range(n))


def negbin_direct_samples(n, p, samples, seed=0, backend=None):
    """Vector of ``samples`` draws; draw ``j`` uses stream ``(seed, j)``."""
    p = float(p)
    return kernels.get(backend).negbin_direct(n, math.log(1.0 - p), seed, 0, samples)


def gamma_race_frequency(n, lam, samples, seed=0, backend=None):
    """Empirical P(Gamma(n,1) >= Gamma(n,lam)) from integer-shape Gamma pairs."""
    hits = kernels.get(backend).gamma_race(n, float(lam), seed, 0, samples)
    return hits / samples if samples else float("nan")


def simulate_regime(regime, samples, seed=0, sampler="sequential", partitions=1, backend=None):
    return run(SimulationPlan(regime, samples, seed, partitions, sampler), backend=backend)


__all__ = [
    "SAMPLERS",
    "SimulationPlan",
    "SimulationSummary",
    "gamma_race_frequency",
    "negbin_direct_sample",
    "negbin_direct_samples",
    "poisson_race_sample",
    "race_times",
    "run",
    "simulate_regime",
]
