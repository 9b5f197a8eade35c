"""Verification suites behind ``bestofn verify``.

Every check yields a record ``{check, observed, threshold, pass}``.  The
``full`` scale uses the acceptance-level sizes; ``smoke`` shrinks sample
counts and sweeps so the whole battery runs in seconds.
"""
import itertools
import math
from fractions import Fraction

from . import formulas, polya, stats
from .core import AntiOkCorral, Constant, Polya
from .exact import exact_distribution, expected_values, sample_path_probability
from .montecarlo import SimulationPlan, gamma_race_frequency, negbin_direct_samples, run

SUITES = ("identities", "bounds", "oracle", "clt", "polya", "antiok")

SCALES = {
    "full": dict(ident_max=30, lemmain_max=40, am_max=40, oracle_n=200, bound_n=200,
                 negbin_ns=(5, 10, 20, 40, 64), mc_samples=1_000_000, clt_n=10_000,
                 clt_samples=1_000_000, fair_n=10_000, antiok_exact_n=200, antiok_limit_n=10_000,
                 polya_n=2000, enum_n=6),
    "smoke": dict(ident_max=12, lemmain_max=15, am_max=15, oracle_n=20, bound_n=30,
                  negbin_ns=(5, 10), mc_samples=20_000, clt_n=400, clt_samples=20_000,
                  fair_n=2000, antiok_exact_n=30, antiok_limit_n=10_000, polya_n=500, enum_n=4),
}


def _rec(name, observed, threshold, ok):
    def num(x):
        if isinstance(x, Fraction):
            return f"{x.numerator}/{x.denominator}"
        if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
            return x
        if isinstance(x, (list, tuple)):
            return [num(v) for v in x]
        return float(x)

    return {"check": name, "observed": num(observed), "threshold": num(threshold), "pass": bool(ok)}


def suite_identities(cfg):
    cat = formulas.catalan_numbers(10)
    yield _rec("catalan prefix 1,1,2,5,14,42,132", list(cat)[:7], [1, 1, 2, 5, 14, 42, 132],
               list(cat)[:7] == [1, 1, 2, 5, 14, 42, 132])
    table = formulas.catalan_numbers(cfg["lemmain_max"])
    direct = [math.factorial(2 * j) // (math.factorial(j) * math.factorial(j + 1)) for j in range(len(table))]
    yield _rec("catalan table equals factorial formula", len(table), len(direct), list(table) == direct)

    m = cfg["ident_max"]
    checked = failed = 0
    for a, b, mm in itertools.product(range(m + 1), repeat=3):
        res = formulas.verify_identity_ident(a, b, mm)
        if res is None:
            continue
        checked += 1
        failed += not res
    yield _rec(f"binomial identity, a,b,m <= {m}", failed, 0, checked > 0 and failed == 0)

    checked = failed = 0
    for n in range(1, cfg["lemmain_max"] + 1):
        for j in range(n):
            checked += 1
            failed += not formulas.verify_identity_lemmain(n, j, catalan=table)
    yield _rec(f"alternating-sum lemma, n <= {cfg['lemmain_max']}", failed, 0, failed == 0)

    for p in (Fraction(3, 5), Fraction(7, 10)):
        bad = [mm for mm in range(1, cfg["am_max"] + 1) if not formulas.verify_am_expansion(p, mm)]
        yield _rec(f"A_m expansion p={p}, m <= {cfg['am_max']}", len(bad), 0, not bad)


def suite_oracle(cfg):
    for p in (Fraction(1, 2), Fraction(3, 5), Fraction(7, 10), Fraction(9, 10)):
        bad = 0
        for n in range(1, cfg["oracle_n"] + 1):
            ez = expected_values(exact_distribution(Constant(n, p)))[0]
            if ez != formulas.expected_profit_catalan(n, p):
                bad += 1
        yield _rec(f"catalan mean == DP E[Z], p={p}, n <= {cfg['oracle_n']}", bad, 0, bad == 0)

    n = min(cfg["oracle_n"], 40)
    p = Fraction(3, 5)
    d = exact_distribution(Constant(n, p))
    ok = all(d.p1_margin[k] == formulas.win_margin_pmf_exact(n, k, p)
             and d.p2_margin[k] == formulas.win_margin_pmf_exact(n, k, 1 - p) for k in range(n))
    yield _rec(f"margin pmf closed form == DP, n={n}", ok, True, ok)

    for regime_of in (lambda n: Constant(n, Fraction(3, 5)), lambda n: Polya(n, 2, 1), AntiOkCorral):
        for n in range(1, cfg["enum_n"] + 1):
            r = regime_of(n)
            enum = enumerate_paths(r)
            d = exact_distribution(r)
            ok = list(d.p1_margin) == enum[0] and list(d.p2_margin) == enum[1]
            if not ok:
                break
        yield _rec(f"path enumeration == DP, {type(r).__name__}, n <= {cfg['enum_n']}", ok, True, ok)


def enumerate_paths(regime):
    """Brute-force margins by summing every terminating round sequence."""
    n = regime.n
    p1 = [Fraction(0)] * n
    p2 = [Fraction(0)] * n
    for length in range(n, 2 * n):
        for seq in itertools.product((True, False), repeat=length):
            a = sum(seq[:-1])
            b = length - 1 - a
            if seq[-1] and a == n - 1 and b < n:
                p1[b] += sample_path_probability(regime, seq)
            elif not seq[-1] and b == n - 1 and a < n:
                p2[a] += sample_path_probability(regime, seq)
    return p1, p2


def suite_bounds(cfg):
    bad = 0
    for p in (0.5, 0.6, 0.7, 0.8, 0.9):
        for n in range(1, cfg["bound_n"] + 1):
            d = exact_distribution(Constant(n, p), mode="float")
            for rep in formulas.martingale_bounds(n, p, d)[:2]:
                bad += not (rep.observed_value <= rep.bound_value * (1 + 1e-12) + 1e-12)
    yield _rec(f"optional-stopping bounds, n <= {cfg['bound_n']}", bad, 0, bad == 0)

    n = cfg["fair_n"]
    d = exact_distribution(Constant(n, 0.5), mode="float")
    ratio, rep = stats.half_profit_check(n, d)
    yield _rec(f"fair game E|Z|/(2 sqrt(n/pi)), n={n}", ratio, [0.98, 1.02], 0.98 <= ratio <= 1.02)
    yield _rec(f"fair game E|Z| <= (sqrt(8n+1)-1)/2, n={n}", rep.observed_value, rep.bound_value, rep.satisfied)

    for n in cfg["negbin_ns"]:
        for p in (0.55, 0.65, 0.75, 0.85, 0.95):
            d = exact_distribution(Constant(n, p), mode="float")
            dev = max(abs(d.w_pmf()[k] - formulas.negbin_approx_pmf(n, k, p)) for k in range(n))
            bound = formulas.approx_error_bound(n, p)
            yield _rec(f"negative-binomial approximation n={n} p={p}", dev, bound, dev <= bound + 1e-12)

    samples = cfg["mc_samples"]
    for n, lam in ((5, 0.5), (20, 2 / 3)):
        freq = gamma_race_frequency(n, lam, samples, seed=11)
        bound = formulas.gamma_race_bound(n, lam)
        yield _rec(f"gamma race P(tau_X >= tau_Y) n={n} lambda={lam:.4g}", freq, bound, freq <= bound)
    eta = negbin_direct_samples(100, 0.5, samples, seed=12)
    freq = float((abs(eta - 100) >= 40).mean())
    bound = formulas.negbin_tail_bound(100, 40)
    yield _rec("NegBin(100,1/2) tail at a=40", freq, bound, freq <= bound)


def suite_clt(cfg):
    n, samples, p = cfg["clt_n"], cfg["clt_samples"], 0.6
    summary = run(SimulationPlan(Constant(n, p), samples, seed=2024))
    ks = stats.ks_from_summary(summary, p)
    yield _rec(f"KS of standardised Z, n={n}, samples={samples}", ks, 0.02, ks <= 0.02)
    ks_w = stats.ks_w_from_summary(summary, p)
    yield _rec(f"KS of standardised W, n={n}, samples={samples}", ks_w, 0.02, ks_w <= 0.02)


def suite_polya(cfg):
    for k in (1, 2, 5):
        r = polya.polya_win_probability(k, k)
        yield _rec(f"P(N1=N2={k}) == 1/2", r.value, 1e-10, abs(r.value - 0.5) <= 1e-10)
    r = polya.polya_win_probability(2, 1)
    yield _rec("P(2,1) == 3/4", r.value, 1e-10, abs(r.value - 0.75) <= 1e-10)
    for n1, n2 in ((1, 1), (2, 3), (5, 5)):
        mass = polya.zeta_total_mass(n1, n2).value
        yield _rec(f"zeta density mass ({n1},{n2})", mass, 1e-10, abs(mass - 1) <= 1e-10)
    s = polya.polya_win_probability(2, 3).value + polya.polya_win_probability(3, 2).value
    yield _rec("duality P(2,3)+P(3,2) == 1", s, 2e-12, abs(s - 1) <= 2e-12)

    closed = polya.symmetric_profit_closed_form(5)
    integral = polya.symmetric_profit_integral_exact(5)
    yield _rec("profit closed form == exact integral, n=5", closed, integral, closed == integral)
    quad = polya.symmetric_profit_quadrature(5).value
    yield _rec("profit quadrature == closed form, n=5", quad, 1e-10, abs(quad - float(closed)) <= 1e-10)
    for n in (100, 400, 1600):
        res = polya.polya_symmetric_expected_profit(n)
        gap = abs(float(res.closed_form) - res.asymptotic)
        yield _rec(f"profit remainder n={n}", gap, 0.6 / math.sqrt(n), gap <= 0.6 / math.sqrt(n))

    n = cfg["polya_n"]
    w = exact_distribution(Polya(n, 2, 1), mode="float").win_probability()
    yield _rec(f"finite-n P1 win, Polya(2,1), n={n}", w, 0.02, abs(w - 0.75) <= 0.02)


def suite_antiok(cfg):
    bad = 0
    for n in range(1, cfg["antiok_exact_n"] + 1):
        d = exact_distribution(AntiOkCorral(n))
        vals = [formulas.antiok_exact_prob(n, k) for k in range(1, n + 1)]
        bad += any(d.p1_margin[n - k] != vals[k - 1] or d.p2_margin[n - k] != vals[k - 1]
                   for k in range(1, n + 1))
        bad += 2 * sum(vals) != 1
    yield _rec(f"anti-OK closed form == DP, n <= {cfg['antiok_exact_n']}", bad, 0, bad == 0)
    n = cfg["antiok_limit_n"]
    dev = max(abs(formulas.antiok_exact_prob(n, k, exact=False) - 2.0 ** -(k + 1)) for k in range(1, 11))
    yield _rec(f"anti-OK geometric limit, n={n}, k <= 10", dev, 1e-3, dev <= 1e-3)


_SUITE_FUNCS = {
    "identities": suite_identities,
    "bounds": suite_bounds,
    "oracle": suite_oracle,
    "clt": suite_clt,
    "polya": suite_polya,
    "antiok": suite_antiok,
}


def run_suites(suite="all", scale="full"):
    cfg = SCALES[scale]
    names = SUITES if suite == "all" else (suite,)
    report = []
    for name in names:
        for rec in _SUITE_FUNCS[name](cfg):
            rec["suite"] = name
            report.append(rec)
    return report
