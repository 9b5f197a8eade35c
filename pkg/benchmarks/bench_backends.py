"""Compare the numba and numpy kernel backends.

    python3 benchmarks/bench_backends.py [--matches 200000] [--repeat 3]

Reports best-of-``repeat`` wall time per kernel and checks that both
backends return identical arrays.  The first numba call (compilation or
cache load) is excluded from the timings.
"""
import argparse
import math
import time

import numpy as np

from bestofn import kernels, rng
from bestofn._accel import HAVE_NUMBA


def best_time(fn, repeat):
    best = math.inf
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def cases(matches):
    thr = rng.bernoulli_threshold(0.6)
    return [
        ("seq_constant n=50", matches, lambda k: k.seq_constant(50, thr, 1, 0, matches)),
        ("seq_urn polya(2,1) n=50", matches, lambda k: k.seq_urn(50, 2, 1, 1, 1, 0, matches)),
        ("seq_urn anti-OK n=50", matches, lambda k: k.seq_urn(50, 50, 50, -1, 1, 0, matches)),
        ("poisson_race n=50", matches, lambda k: k.poisson_race(50, 2 / 3, 1, 0, matches)),
        ("negbin_direct n=100", matches, lambda k: k.negbin_direct(100, math.log(0.5), 1, 0, matches)),
        ("dp_float constant n=2000", None, lambda k: k.dp_float(2000, 0, 0, 0, 0, 0.6)),
    ]


def same(a, b):
    if isinstance(a, tuple):
        return all(np.array_equal(x, y) for x, y in zip(a, b))
    return np.array_equal(a, b)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--matches", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = ["numpy"] + (["numba"] if HAVE_NUMBA else [])
    print(f"{'kernel':28s} " + " ".join(f"{b:>12s}" for b in backends) + "   speedup  identical")
    for name, count, call in cases(args.matches):
        times, outs = {}, {}
        for b in backends:
            k = kernels.get(b)
            if b == "numba":
                call(k)  # compile or load from cache
            times[b], outs[b] = best_time(lambda: call(k), args.repeat)
        cols = " ".join(f"{times[b]:11.4f}s" for b in backends)
        if "numba" in times:
            speed = f"{times['numpy'] / times['numba']:8.1f}x"
            ident = "yes" if same(outs["numpy"], outs["numba"]) else "NO"
        else:
            speed, ident = "       -", "-"
        print(f"{name:28s} {cols}   {speed}  {ident}")
        if count and "numba" in times:
            print(f"{'':28s} numba throughput {count / times['numba']:,.0f} matches/s")


if __name__ == "__main__":
    main()
