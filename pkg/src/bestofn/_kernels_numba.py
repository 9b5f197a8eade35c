"""Numba kernels.  Each has a numpy twin in ``_kernels_numpy`` with the same
signature and, for the same inputs, the same output."""
import math

import numpy as np
from numba import njit, uint64

from .rng import INV_2_53, STREAM_MULT

_GOLDEN = uint64(0x9E3779B97F4A7C15)
_M1 = uint64(0xBF58476D1CE4E5B9)
_M2 = uint64(0x94D049BB133111EB)
_SMULT = uint64(STREAM_MULT)


@njit(inline="always")
def _rotl(x, k):
    return (x << uint64(k)) | (x >> uint64(64 - k))


@njit(inline="always")
def _splitmix(x):
    x = x + _GOLDEN
    z = x
    z = (z ^ (z >> uint64(30))) * _M1
    z = (z ^ (z >> uint64(27))) * _M2
    return x, z ^ (z >> uint64(31))


@njit(inline="always")
def _seed_state(seed, j, s):
    x = uint64(seed) ^ (uint64(j) * _SMULT)
    for w in range(4):
        x, s[w] = _splitmix(x)


@njit(inline="always")
def _next(s):
    s0 = s[0]
    s1 = s[1]
    s2 = s[2]
    s3 = s[3]
    result = _rotl(s1 * uint64(5), 7) * uint64(9)
    t = s1 << uint64(17)
    s2 ^= s0
    s3 ^= s1
    s1 ^= s2
    s0 ^= s3
    s2 ^= t
    s[0] = s0
    s[1] = s1
    s[2] = s2
    s[3] = _rotl(s3, 45)
    return result


@njit(inline="always")
def _uniform(s):
    return float(_next(s) >> uint64(11)) * INV_2_53


@njit(inline="always")
def _exponential(s):
    return -math.log(1.0 - _uniform(s))


@njit(nogil=True, cache=True)
def seq_constant(n, thr, seed, start, stop):
    counts = np.zeros(2 * n + 1, np.int64)
    s = np.empty(4, np.uint64)
    t = uint64(thr)
    for j in range(start, stop):
        _seed_state(seed, j, s)
        s0 = s[0]
        s1 = s[1]
        s2 = s[2]
        s3 = s[3]
        a = 0
        b = 0
        while a < n and b < n:
            r = _rotl(s1 * uint64(5), 7) * uint64(9)
            tt = s1 << uint64(17)
            s2 ^= s0
            s3 ^= s1
            s1 ^= s2
            s0 ^= s3
            s2 ^= tt
            s3 = _rotl(s3, 45)
            w = np.int64((r >> uint64(11)) < t)
            a += w
            b += 1 - w
        counts[a - b + n] += 1
    return counts


@njit(nogil=True, cache=True)
def seq_urn(n, c1, c2, sign, seed, start, stop):
    """Urn regimes: weights ``c1 + sign*a`` and ``c2 + sign*b``."""
    counts = np.zeros(2 * n + 1, np.int64)
    s = np.empty(4, np.uint64)
    for j in range(start, stop):
        _seed_state(seed, j, s)
        a = 0
        b = 0
        while a < n and b < n:
            w1 = c1 + sign * a
            w2 = c2 + sign * b
            if _uniform(s) < float(w1) / float(w1 + w2):
                a += 1
            else:
                b += 1
        counts[a - b + n] += 1
    return counts


@njit(nogil=True, cache=True)
def poisson_race(n, lam, seed, start, stop):
    counts = np.zeros(2 * n + 1, np.int64)
    s = np.empty(4, np.uint64)
    for j in range(start, stop):
        _seed_state(seed, j, s)
        tx = _exponential(s)
        ty = _exponential(s) / lam
        a = 0
        b = 0
        while True:
            if tx < ty:
                a += 1
                if a == n:
                    break
                tx += _exponential(s)
            else:
                b += 1
                if b == n:
                    break
                ty += _exponential(s) / lam
        counts[a - b + n] += 1
    return counts


@njit(nogil=True, cache=True)
def beta_mixture(n, n1, n2, seed, start, stop):
    counts = np.zeros(2 * n + 1, np.int64)
    s = np.empty(4, np.uint64)
    for j in range(start, stop):
        _seed_state(seed, j, s)
        g1 = 0.0
        for _ in range(n1):
            g1 += _exponential(s)
        g2 = 0.0
        for _ in range(n2):
            g2 += _exponential(s)
        xi = g1 / (g1 + g2)
        a = 0
        b = 0
        while a < n and b < n:
            if _uniform(s) < xi:
                a += 1
            else:
                b += 1
        counts[a - b + n] += 1
    return counts


@njit(nogil=True, cache=True)
def negbin_direct(n, log_q, seed, start, stop):
    out = np.empty(stop - start, np.int64)
    s = np.empty(4, np.uint64)
    for j in range(start, stop):
        _seed_state(seed, j, s)
        total = 0
        for _ in range(n):
            total += np.int64(math.floor(math.log(1.0 - _uniform(s)) / log_q))
        out[j - start] = total
    return out


@njit(nogil=True, cache=True)
def gamma_race(n, lam, seed, start, stop):
    hits = 0
    s = np.empty(4, np.uint64)
    for j in range(start, stop):
        _seed_state(seed, j, s)
        tx = 0.0
        for _ in range(n):
            tx += _exponential(s)
        ty = 0.0
        for _ in range(n):
            ty += _exponential(s) / lam
        if tx >= ty:
            hits += 1
    return hits


@njit(nogil=True, cache=True)
def dp_float(n, kind, c1, c2, sign, p):
    """Forward reach-probability DP by anti-diagonals.

    ``kind`` 0: constant p.  ``kind`` 1: urn with weights ``c1 + sign*a``,
    ``c2 + sign*b``.
    """
    p1 = np.zeros(n, np.float64)
    p2 = np.zeros(n, np.float64)
    cur = np.zeros(n, np.float64)
    nxt = np.zeros(n, np.float64)
    cur[0] = 1.0
    q = 1.0 - p
    for k in range(2 * n - 1):
        lo = max(0, k - n + 1)
        hi = min(k, n - 1)
        for a in range(lo, hi + 2):
            if a < n:
                nxt[a] = 0.0
        for a in range(lo, hi + 1):
            b = k - a
            if kind == 0:
                pw = p
                qw = q
            else:
                w1 = float(c1 + sign * a)
                w2 = float(c2 + sign * b)
                pw = w1 / (w1 + w2)
                qw = w2 / (w1 + w2)
            r = cur[a]
            if a == n - 1:
                p1[b] = r * pw
            else:
                nxt[a + 1] += r * pw
            if b == n - 1:
                p2[a] = r * qw
            else:
                nxt[a] += r * qw
        cur, nxt = nxt, cur
    return p1, p2
