"""Pure-numpy kernels.

Matches in a block advance in lockstep, one round per iteration; finished
matches are dropped from the working arrays so every stream is advanced
exactly as many times as the compiled kernels advance it.
"""
import numpy as np

from .rng import next_double_arr, next_u64_arr, stream_states

BLOCK = 1 << 16


def _blocks(start, stop):
    for lo in range(start, stop, BLOCK):
        yield lo, min(stop, lo + BLOCK)


def _exponential(s):
    return -np.log(1.0 - next_double_arr(s))


def _tally(counts, n, a, b):
    np.add.at(counts, a - b + n, 1)


def _run_rounds(n, s, a, b, counts, p1_wins):
    """Lockstep rounds; ``p1_wins(s, a, b, idx)`` returns a boolean mask."""
    idx = np.arange(a.size)
    while a.size:
        won = p1_wins(s, a, b, idx)
        a += won
        b += ~won
        done = (a == n) | (b == n)
        if done.any():
            _tally(counts, n, a[done], b[done])
            keep = ~done
            s = s[:, keep]
            a = a[keep]
            b = b[keep]
            idx = idx[keep]


def seq_constant(n, thr, seed, start, stop):
    counts = np.zeros(2 * n + 1, np.int64)
    t = np.uint64(thr)
    for lo, hi in _blocks(start, stop):
        s = stream_states(seed, lo, hi)
        z = np.zeros(hi - lo, np.int64)
        _run_rounds(n, s, z, z.copy(), counts,
                    lambda s, a, b, idx: (next_u64_arr(s) >> np.uint64(11)) < t)
    return counts


def seq_urn(n, c1, c2, sign, seed, start, stop):
    counts = np.zeros(2 * n + 1, np.int64)

    def rule(s, a, b, idx):
        w1 = (c1 + sign * a).astype(np.float64)
        w2 = (c2 + sign * b).astype(np.float64)
        return next_double_arr(s) < w1 / (w1 + w2)

    for lo, hi in _blocks(start, stop):
        s = stream_states(seed, lo, hi)
        z = np.zeros(hi - lo, np.int64)
        _run_rounds(n, s, z, z.copy(), counts, rule)
    return counts


def poisson_race(n, lam, seed, start, stop):
    counts = np.zeros(2 * n + 1, np.int64)
    for lo, hi in _blocks(start, stop):
        s = stream_states(seed, lo, hi)
        tx = _exponential(s)
        ty = _exponential(s) / lam
        a = np.zeros(hi - lo, np.int64)
        b = np.zeros(hi - lo, np.int64)
        while a.size:
            xs = tx < ty
            a += xs
            b += ~xs
            done = (a == n) | (b == n)
            if done.any():
                _tally(counts, n, a[done], b[done])
                keep = ~done
                s, a, b, tx, ty, xs = s[:, keep], a[keep], b[keep], tx[keep], ty[keep], xs[keep]
            if not a.size:
                break
            e = _exponential(s)
            tx = np.where(xs, tx + e, tx)
            ty = np.where(xs, ty, ty + e / lam)
    return counts


def beta_mixture(n, n1, n2, seed, start, stop):
    counts = np.zeros(2 * n + 1, np.int64)
    for lo, hi in _blocks(start, stop):
        s = stream_states(seed, lo, hi)
        g1 = np.zeros(hi - lo)
        for _ in range(n1):
            g1 += _exponential(s)
        g2 = np.zeros(hi - lo)
        for _ in range(n2):
            g2 += _exponential(s)
        xi_all = g1 / (g1 + g2)
        z = np.zeros(hi - lo, np.int64)
        _run_rounds(n, s, z, z.copy(), counts,
                    lambda s, a, b, idx: next_double_arr(s) < xi_all[idx])
    return counts


def negbin_direct(n, log_q, seed, start, stop):
    out = np.empty(stop - start, np.int64)
    for lo, hi in _blocks(start, stop):
        s = stream_states(seed, lo, hi)
        total = np.zeros(hi - lo, np.int64)
        for _ in range(n):
            total += np.floor(np.log(1.0 - next_double_arr(s)) / log_q).astype(np.int64)
        out[lo - start:hi - start] = total
    return out


def gamma_race(n, lam, seed, start, stop):
    hits = 0
    for lo, hi in _blocks(start, stop):
        s = stream_states(seed, lo, hi)
        tx = np.zeros(hi - lo)
        for _ in range(n):
            tx += _exponential(s)
        ty = np.zeros(hi - lo)
        for _ in range(n):
            ty += _exponential(s) / lam
        hits += int(np.count_nonzero(tx >= ty))
    return hits


def dp_float(n, kind, c1, c2, sign, p):
    p1 = np.zeros(n)
    p2 = np.zeros(n)
    cur = np.zeros(n)
    cur[0] = 1.0
    for k in range(2 * n - 1):
        lo = max(0, k - n + 1)
        hi = min(k, n - 1)
        a = np.arange(lo, hi + 1)
        b = k - a
        if kind == 0:
            pw = np.full(a.size, p)
            qw = np.full(a.size, 1.0 - p)
        else:
            w1 = (c1 + sign * a).astype(np.float64)
            w2 = (c2 + sign * b).astype(np.float64)
            pw = w1 / (w1 + w2)
            qw = w2 / (w1 + w2)
        r = cur[lo:hi + 1]
        rp = r * pw
        rq = r * qw
        nxt = np.zeros(n)
        if hi == n - 1:
            p1[b[-1]] = rp[-1]
            nxt[lo + 1:hi + 1] += rp[:-1]
        else:
            nxt[lo + 1:hi + 2] += rp
        if b[0] == n - 1:
            p2[lo] = rq[0]
            nxt[lo + 1:hi + 1] += rq[1:]
        else:
            nxt[lo:hi + 1] += rq
        cur = nxt
    return p1, p2

