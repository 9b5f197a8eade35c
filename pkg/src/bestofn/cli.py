"""``bestofn`` command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 capacity or numerical failure.
"""
import argparse
import csv
import datetime as _dt
import io
import json
import math
import sys
from fractions import Fraction

from . import __version__, formulas, polya, rng, stats
from .core import (AntiOkCorral, Constant, ContractViolation, GameState, Polya, parse_probability,
                   round_win_probability, step)
from .exact import CapacityError, exact_distribution, expected_values
from .montecarlo import SAMPLERS, SimulationPlan, plan_metadata, run
from .quadrature import QuadratureError
from .verify import SUITES, run_suites

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


def _jsonable(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "item") and not isinstance(x, (str, bytes)):
        return x.item()
    return x


def envelope(command, parameters, results, seed=None):
    return {
        "command": command,
        "parameters": _jsonable(parameters),
        "results": _jsonable(results),
        "provenance": {
            "version": __version__,
            "seed": seed,
            "rng_algorithm": rng.ALGORITHM,
            "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
        },
    }


def dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2)


def _emit(text, out):
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _regime_from_args(args):
    if args.regime == "constant":
        if args.p is None:
            raise ContractViolation("--p is required for the constant regime")
        return Constant(args.n, parse_probability(args.p))
    if args.regime == "polya":
        return Polya(args.n, args.n1, args.n2)
    return AntiOkCorral(args.n)


def _add_regime_flags(p, need_n=True):
    p.add_argument("--regime", choices=("constant", "polya", "antiok"), default="constant")
    p.add_argument("--n", type=int, required=need_n, default=None if need_n else 5)
    p.add_argument("--p", help='round win probability, "num/den" (exact) or decimal (float)')
    p.add_argument("--n1", type=int, default=1)
    p.add_argument("--n2", type=int, default=1)


def _fmt_scalar(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return x


# -- exact -------------------------------------------------------------------

def cmd_exact(args):
    regime = _regime_from_args(args)
    dist = exact_distribution(regime, mode=args.mode, exact_cap=args.exact_cap)
    ez, eabs, etau = expected_values(dist)
    results = {
        "distribution": dist.to_dict(),
        "E_Z": _fmt_scalar(ez),
        "E_absZ": _fmt_scalar(eabs),
        "E_tau": _fmt_scalar(etau),
        "total_probability": _fmt_scalar(dist.total()),
    }
    if isinstance(regime, Constant):
        results["bounds"] = [r.to_dict() for r in formulas.martingale_bounds(regime.n, regime.p, dist)]
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["opponent_wins", "p1_margin", "p2_margin"])
        d = dist.to_dict()
        for k in range(dist.n):
            w.writerow([k, d["p1_margin"][k], d["p2_margin"][k]])
        _emit(buf.getvalue(), args.out)
    else:
        _emit(dumps(envelope("exact", regime.params() | {"mode": dist.mode}, results)) + "\n", args.out)
    return EXIT_OK


# -- formula -----------------------------------------------------------------

def _formula(args):
    sub = args.formula
    if sub == "catalan":
        return {"values": list(formulas.catalan_numbers(args.m))}, True
    if sub == "catalan-mean":
        p = parse_probability(args.p)
        value = formulas.expected_profit_catalan(args.n, p)
        res = {"value": value}
        ok = True
        if args.check:
            dp = expected_values(exact_distribution(Constant(args.n, p)))[0]
            ok = dp == value if isinstance(p, Fraction) else math.isclose(dp, value, rel_tol=1e-12, abs_tol=1e-12)
            res["check"] = {"dp_E_Z": dp, "pass": ok}
        return res, ok
    if sub == "negbin-pmf":
        p = parse_probability(args.p)
        value = formulas.negbin_approx_pmf(args.n, args.k, p)
        bound = formulas.approx_error_bound(args.n, p)
        res = {"value": value, "error_bound": bound}
        ok = True
        if args.check and args.k < args.n:
            exact_w = exact_distribution(Constant(args.n, p)).w_pmf()[args.k]
            ok = abs(exact_w - value) <= bound
            res["check"] = {"exact_P_W": exact_w, "abs_error": abs(exact_w - value), "pass": ok}
        return res, ok
    if sub == "antiok-exact":
        value = formulas.antiok_exact_prob(args.n, args.k, exact=not args.float)
        res = {"value": value}
        ok = True
        if args.check:
            d = exact_distribution(AntiOkCorral(args.n))
            dp = d.p1_margin[args.n - args.k]
            ok = dp == value if not args.float else math.isclose(float(dp), value, rel_tol=1e-9)
            res["check"] = {"dp": dp, "pass": ok}
        return res, ok
    if sub == "antiok-limit":
        v = formulas.antiok_limit_pmf(args.k)
        return {"value": float(v), "exact": v}, True
    if sub == "polya-winprob":
        r = polya.polya_win_probability(args.n1, args.n2, tol=args.tol)
        return {"value": r.value, "error_estimate": r.error, "panels": r.panels}, True
    if sub == "polya-profit":
        r = polya.polya_symmetric_expected_profit(args.n)
        return {
            "closed_form": r.closed_form,
            "closed_form_float": float(r.closed_form),
            "asymptotic": r.asymptotic,
            "quadrature": None if r.quadrature is None else r.quadrature.value,
        }, True
    if sub == "bounds":
        p = parse_probability(args.p)
        dist = exact_distribution(Constant(args.n, p), mode="float") if args.check else None
        reports = formulas.martingale_bounds(args.n, p, dist)
        res = {"martingale": [r.to_dict() for r in reports],
               "approx_error_bound": formulas.approx_error_bound(args.n, p)}
        pf = Fraction(p) if isinstance(p, Fraction) else p
        if pf >= Fraction(1, 2):
            res["gamma_race_bound"] = formulas.gamma_race_bound(args.n, (1 - pf) / pf)
        ok = all(r.satisfied is not False for r in reports)
        return res, ok
    if sub == "identities":
        m = args.max
        ident = [formulas.verify_identity_ident(a, b, c)
                 for a in range(m + 1) for b in range(m + 1) for c in range(m + 1)]
        ident = [x for x in ident if x is not None]
        lem = [formulas.verify_identity_lemmain(n, j) for n in range(1, args.max_n + 1) for j in range(n)]
        am = [formulas.verify_am_expansion(p, k) for p in (Fraction(3, 5), Fraction(7, 10))
              for k in range(1, args.max_n + 1)]
        res = {
            "ident": {"checked": len(ident), "pass": all(ident)},
            "lemmain": {"checked": len(lem), "pass": all(lem)},
            "am_expansion": {"checked": len(am), "pass": all(am)},
        }
        return res, all(ident) and all(lem) and all(am)
    raise ContractViolation(f"unknown formula {sub!r}")


def cmd_formula(args):
    res, ok = _formula(args)
    params = {k: v for k, v in vars(args).items() if k not in ("func", "out") and v is not None}
    _emit(dumps(envelope("formula " + args.formula, params, res)) + "\n", args.out)
    return EXIT_OK if ok else EXIT_FAIL


# -- simulate ----------------------------------------------------------------

def cmd_simulate(args):
    regime = _regime_from_args(args)
    plan = SimulationPlan(regime, args.samples, args.seed, args.partitions, args.sampler)
    summary = run(plan)
    results = summary.results_dict()
    if args.compare_exact:
        dist = exact_distribution(regime, mode="float")
        results["tv_distance_to_exact"] = stats.tv_distance(summary, dist) if summary.total else None
    _emit(dumps(envelope("simulate", plan_metadata(plan), results, seed=args.seed)) + "\n", args.out)
    return EXIT_OK


# -- verify ------------------------------------------------------------------

def cmd_verify(args):
    report = run_suites(args.suite, args.scale)
    failed = [r["check"] for r in report if not r["pass"]]
    _emit(dumps(envelope("verify", {"suite": args.suite, "scale": args.scale},
                         {"checks": report, "failed": failed})) + "\n", args.out)
    for name in failed:
        print(f"FAILED: {name}", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


# -- polya -------------------------------------------------------------------

def cmd_polya(args):
    r = polya.polya_win_probability(args.n1, args.n2, tol=args.tol)
    if args.grid_out:
        xs, fs = polya.density_grid(args.n1, args.n2, args.points)
        _write_csv(args.grid_out, ["x", "f_zeta"], zip(xs.tolist(), fs.tolist()))
    table = []
    for n in args.profit_n:
        res = polya.polya_symmetric_expected_profit(n)
        table.append({"n": n, "closed_form": float(res.closed_form), "asymptotic": res.asymptotic,
                      "difference": float(res.closed_form) - res.asymptotic})
    results = {"win_probability": r.value, "error_estimate": r.error, "expected_profit": table}
    _emit(dumps(envelope("polya", {"n1": args.n1, "n2": args.n2}, results)) + "\n", args.out)
    return EXIT_OK


# -- plotdata ----------------------------------------------------------------

def _write_csv(path, header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([repr(x) if isinstance(x, float) else x for x in row])
    _emit(buf.getvalue(), path)


def sample_path(regime, seed):
    """Lead ``X_k`` along one match played on stream ``(seed, 0)``."""
    stream = rng.match_stream(seed, 0)
    state = GameState(0, 0, regime.n)
    rows = [(0, 0, 2 * regime.n)]
    while not state.absorbing:
        pw = float(round_win_probability(regime, state))
        state = step(state, stream.random() < pw)
        k = state.round_index
        rows.append((k, state.lead, 2 * regime.n - k))
    return rows


def cmd_plotdata(args):
    if args.plot == "path":
        regime = _regime_from_args(args)
        _write_csv(args.out, ["k", "X_k", "line"], sample_path(regime, args.seed))
    elif args.plot == "zeta-density":
        xs, fs = polya.density_grid(args.n1, args.n2, args.points)
        _write_csv(args.out, ["x", "f_zeta"], zip(xs.tolist(), fs.tolist()))
    else:
        regime = _regime_from_args(args)
        dist = exact_distribution(regime, mode=args.mode)
        rows = [(z, float(pr)) for z, pr in dist.z_pmf().items()]
        _write_csv(args.out, ["z", "probability"], rows)
    return EXIT_OK


# -- parser ------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(prog="bestofn", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exact", help="exact law of the winner's margin")
    _add_regime_flags(p)
    p.add_argument("--mode", choices=("auto", "exact", "float"), default="auto")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--exact-cap", type=int, default=512)
    p.add_argument("--out")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("formula", help="closed forms and bounds")
    p.add_argument("formula", choices=("catalan", "catalan-mean", "negbin-pmf", "antiok-exact",
                                       "antiok-limit", "polya-winprob", "polya-profit", "bounds",
                                       "identities"))
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--m", type=int, default=10)
    p.add_argument("--p", default="1/2")
    p.add_argument("--n1", type=int, default=1)
    p.add_argument("--n2", type=int, default=1)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--max", type=int, default=30)
    p.add_argument("--max-n", type=int, default=40)
    p.add_argument("--float", action="store_true")
    p.add_argument("--check", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_formula)

    p = sub.add_parser("simulate", help="Monte Carlo simulation")
    _add_regime_flags(p)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--partitions", type=int, default=1)
    p.add_argument("--sampler", choices=SAMPLERS, default="sequential")
    p.add_argument("--compare-exact", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--scale", choices=("full", "smoke"), default="full")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("polya", help="Polya-urn asymptotics")
    p.add_argument("--n1", type=int, default=1)
    p.add_argument("--n2", type=int, default=1)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--points", type=int, default=401)
    p.add_argument("--grid-out")
    p.add_argument("--profit-n", type=int, nargs="*", default=[2, 5, 10, 100, 400, 1600])
    p.add_argument("--out")
    p.set_defaults(func=cmd_polya)

    p = sub.add_parser("plotdata", help="CSV data for plots")
    p.add_argument("plot", choices=("path", "zeta-density", "margin-pmf"))
    _add_regime_flags(p, need_n=False)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--points", type=int, default=401)
    p.add_argument("--mode", choices=("auto", "exact", "float"), default="float")
    p.add_argument("--out")
    p.set_defaults(func=cmd_plotdata)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ContractViolation as exc:
        print(f"bestofn: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CapacityError, QuadratureError, OverflowError) as exc:
        print(f"bestofn: error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
