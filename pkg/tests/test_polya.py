import math
from fractions import Fraction

import numpy as np
import pytest
from scipy import integrate as sp_integrate
from scipy.stats import beta

from bestofn import polya, rng
from bestofn.core import ContractViolation, Polya
from bestofn.exact import exact_distribution
from bestofn.quadrature import QuadratureError, integrate


def test_integrate_polynomial_and_smooth():
    assert abs(integrate(lambda x: x**3, 0.0, 2.0).value - 4.0) < 1e-13
    assert abs(integrate(np.exp, 0.0, 1.0).value - (math.e - 1)) < 1e-13


def test_integrate_endpoint_singularity():
    r = integrate(lambda x: np.sqrt(x), 0.0, 1.0, tol=1e-10)
    assert abs(r.value - 2 / 3) < 1e-10 and r.panels > 1


def test_integrate_budget_error():
    with pytest.raises(QuadratureError) as exc:
        integrate(lambda x: np.sin(1 / np.maximum(x, 1e-300)), 0.0, 1.0, tol=1e-15, max_panels=50)
    assert exc.value.estimate is not None
    with pytest.raises(ValueError):
        integrate(np.exp, 0.0, 1.0, tol=0)


@pytest.mark.parametrize("n1,n2", [(1, 1), (2, 1), (1, 2), (3, 5), (4, 4), (7, 2)])
def test_win_probability_matches_beta_tail(n1, n2):
    # the P1 win limit is P(xi > 1/2) for xi ~ Beta(N1, N2)
    assert abs(polya.polya_win_probability(n1, n2).value - beta.sf(0.5, n1, n2)) < 1e-11


def test_known_win_probabilities():
    assert abs(polya.polya_win_probability(2, 1).value - 0.75) < 1e-12
    assert abs(polya.polya_win_probability(3, 3).value - 0.5) < 1e-12


@pytest.mark.parametrize("n1,n2", [(1, 1), (2, 3), (6, 1)])
def test_density_mass(n1, n2):
    assert abs(polya.zeta_total_mass(n1, n2).value - 1) < 1e-11


def test_density_values():
    # N1 = N2 = 1: density 1/(2-|x|)^2
    assert polya.zeta_density(1, 1, 0.0) == pytest.approx(0.25)
    assert polya.zeta_density(1, 1, 1.0) == pytest.approx(1.0)
    assert polya.zeta_density(2, 2, 1.0) == 0.0
    arr = polya.zeta_density(2, 3, np.array([-0.5, 0.5]))
    assert arr.shape == (2,)
    with pytest.raises(ContractViolation):
        polya.zeta_density(1, 1, 1.5)
    with pytest.raises(ContractViolation):
        polya.zeta_density(0, 1, 0.0)


def test_density_matches_scipy_quad():
    val, _ = sp_integrate.quad(lambda x: polya.zeta_density(2, 5, x), -1, 1)
    assert abs(val - 1) < 1e-10


def test_grid():
    xs, ys = polya.density_grid(1, 1, points=5)
    assert list(xs) == [-1.0, -0.5, 0.0, 0.5, 1.0]
    a = polya.polya_asymptotics(2, 1, grid_points=11)
    assert a.density_grid[0].size == 11 and abs(a.win_prob_p1 - 0.75) < 1e-12


def test_beta_prefactor():
    assert polya.beta_prefactor(1, 1) == 1
    assert polya.beta_prefactor(2, 3) == 12


def test_profit_closed_form_n2():
    assert polya.symmetric_profit_closed_form(2) == 1
    with pytest.raises(ContractViolation):
        polya.symmetric_profit_closed_form(1)


@pytest.mark.parametrize("n", [2, 3, 5, 10, 31])
def test_profit_closed_form_equals_exact_integral(n):
    assert polya.symmetric_profit_closed_form(n) == polya.symmetric_profit_integral_exact(n)


@pytest.mark.parametrize("n", [2, 5, 50])
def test_profit_quadrature(n):
    q = polya.symmetric_profit_quadrature(n).value
    assert abs(q - float(polya.symmetric_profit_closed_form(n))) < 1e-10


def test_profit_float_path_and_asymptotic():
    assert abs(polya.symmetric_profit_closed_form(300, exact=False)
               - float(polya.symmetric_profit_closed_form(300))) < 1e-9
    res = polya.polya_symmetric_expected_profit(10_000)
    assert res.quadrature is None and isinstance(res.closed_form, float)
    assert abs(res.closed_form / res.asymptotic - 1) < 1e-3


def test_finite_n_win_probability_approaches_limit():
    w = exact_distribution(Polya(300, 2, 1), mode="float").win_probability()
    assert abs(w - 0.75) < 0.02


def test_beta_mixture_sampler():
    out = polya.beta_mixture_sampler(1, 1, 5, rng.match_stream(1, 0), xi=1 - 1e-18)
    assert out.net_profit == 5
    outs = [polya.beta_mixture_sampler(2, 1, 7, rng.match_stream(3, j)) for j in range(2000)]
    wins = sum(o.net_profit > 0 for o in outs) / len(outs)
    assert all(7 <= o.rounds <= 13 for o in outs)
    exact_win = float(exact_distribution(Polya(7, 2, 1)).win_probability())
    assert abs(wins - exact_win) < 0.04
