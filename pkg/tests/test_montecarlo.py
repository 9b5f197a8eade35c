import json
import math
from fractions import Fraction

import numpy as np
import pytest

from bestofn import kernels, rng, stats
from bestofn._accel import USE_NUMBA
from bestofn.core import AntiOkCorral, Constant, ContractViolation, Polya, play_match
from bestofn.exact import exact_distribution
from bestofn.montecarlo import (
    SimulationPlan,
    SimulationSummary,
    gamma_race_frequency,
    negbin_direct_sample,
    negbin_direct_samples,
    poisson_race_sample,
    race_times,
    run,
)
from bestofn.polya import beta_mixture_sampler

BACKENDS = ["numpy"] + (["numba"] if USE_NUMBA else [])


def python_counts(regime, seed, samples, sampler="sequential"):
    n = regime.n
    c = np.zeros(2 * n + 1, np.int64)
    for j in range(samples):
        g = rng.match_stream(seed, j)
        if sampler == "sequential":
            out = play_match(regime, g)
        elif sampler == "poisson_race":
            out = poisson_race_sample(n, regime.p, g)
        else:
            out = beta_mixture_sampler(regime.n1, regime.n2, n, g)
        c[out.net_profit + n] += 1
    return c


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("regime,sampler", [
    (Constant(6, 0.6), "sequential"),
    (Constant(6, Fraction(1, 3)), "sequential"),
    (Polya(6, 2, 3), "sequential"),
    (AntiOkCorral(6), "sequential"),
    (Constant(6, 0.7), "poisson_race"),
    (Polya(6, 1, 2), "beta_mixture"),
])
def test_kernels_replay_pure_python(backend, regime, sampler):
    s = run(SimulationPlan(regime, 500, seed=31, sampler=sampler), backend=backend)
    assert np.array_equal(s.z_counts, python_counts(regime, 31, 500, sampler))


@pytest.mark.parametrize("partitions", [1, 3, 7, 64])
@pytest.mark.parametrize("workers", [1, 4])
def test_partition_and_worker_invariance(partitions, workers):
    base = run(SimulationPlan(Polya(9, 1, 1), 5000, seed=5))
    other = run(SimulationPlan(Polya(9, 1, 1), 5000, seed=5, partitions=partitions), workers=workers)
    assert base == other


def test_zero_samples():
    s = run(SimulationPlan(Constant(4, 0.5), 0))
    assert s.total == 0 and s.counts == {}
    assert math.isnan(s.empirical_E_Z)
    assert "empirical_E_Z" not in s.results_dict()


def test_more_partitions_than_samples():
    s = run(SimulationPlan(Constant(4, 0.5), 3, partitions=10))
    assert s.total == 3


@pytest.mark.parametrize("kwargs", [
    dict(regime=Constant(3, 0.5), samples=-1),
    dict(regime=Constant(3, 0.5), samples=1, partitions=0),
    dict(regime=Constant(3, 0.5), samples=1, seed=-1),
    dict(regime=Constant(3, 0.5), samples=1, sampler="nope"),
    dict(regime=Polya(3, 1, 1), samples=1, sampler="poisson_race"),
    dict(regime=Constant(3, 0.5), samples=1, sampler="beta_mixture"),
])
def test_plan_validation(kwargs):
    with pytest.raises(ContractViolation):
        SimulationPlan(**kwargs)


def test_summary_views_and_json():
    s = run(SimulationPlan(Constant(3, Fraction(3, 5)), 1000, seed=1))
    assert sum(s.counts.values()) == 1000
    assert all(w in (1, 2) and 0 <= k < 3 for w, k in s.counts)
    assert abs(sum(s.z_law().values()) - 1) < 1e-12
    assert s.empirical_E_tau == pytest.approx(6 - s.empirical_E_absZ)
    doc = json.loads(s.to_json())
    assert doc["plan"]["p"] == "3/5" and doc["plan"]["seed"] == 1
    assert doc["results"]["total"] == 1000


def test_merge():
    a = run(SimulationPlan(Constant(3, 0.5), 100, seed=1))
    b = run(SimulationPlan(Constant(3, 0.5), 50, seed=2))
    assert a.merge(b).total == 150
    with pytest.raises(ContractViolation):
        a.merge(SimulationSummary(4, np.zeros(9, np.int64)))


def test_sequential_matches_exact_law():
    reg = Polya(5, 2, 1)
    s = run(SimulationPlan(reg, 200_000, seed=8))
    assert stats.tv_distance(s, exact_distribution(reg)) < 0.01


@pytest.mark.parametrize("backend", BACKENDS)
def test_negbin_direct_replay(backend):
    v = negbin_direct_samples(4, 0.3, 50, seed=2, backend=backend)
    ref = [negbin_direct_sample(4, 0.3, rng.match_stream(2, j)) for j in range(50)]
    assert list(v) == ref


def test_negbin_direct_mean():
    v = negbin_direct_samples(20, 0.5, 100_000, seed=3)
    assert abs(v.mean() - 20) < 0.2


@pytest.mark.parametrize("backend", BACKENDS)
def test_gamma_race_replay(backend):
    hits = sum(tx >= ty for tx, ty in (race_times(3, 0.75, rng.match_stream(6, j)) for j in range(300)))
    # rate of the second process is q/p = 1/3
    assert gamma_race_frequency(3, 1 / 3, 300, seed=6, backend=backend) == hits / 300


def test_gamma_race_frequency_sane():
    assert math.isnan(gamma_race_frequency(3, 0.5, 0))
    assert 0.45 < gamma_race_frequency(5, 1.0, 20_000, seed=1) < 0.55


def test_kernels_dispatch():
    assert kernels.get("numpy").__name__.endswith("_kernels_numpy")
    with pytest.raises(ValueError):
        kernels.get("fortran")


@pytest.mark.parametrize("kind,args", [(0, (0, 0, 0, 0.6)), (1, (2, 3, 1, 0.0)), (1, (25, 25, -1, 0.0))])
def test_dp_float_backends_agree(kind, args):
    if not USE_NUMBA:
        pytest.skip("numba not available")
    a = kernels.get("numba").dp_float(25, kind, *args)
    b = kernels.get("numpy").dp_float(25, kind, *args)
    assert [np.array_equal(x, y) for x, y in zip(a, b)] == [True] * len(a)


def test_env_flag_selects_numpy_backend():
    import os
    import subprocess
    import sys

    env = dict(os.environ, BESTOFN_NO_NUMBA="1")
    code = "from bestofn import _accel; print(_accel.default_backend())"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
