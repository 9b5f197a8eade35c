"""Seedable, splittable 64-bit random streams.

Every simulated match owns its own stream, derived from ``(seed, index)``
where ``index`` is the match's global position in the run:

    x  = seed XOR (index * 0xD1B54A32D192ED03)   (mod 2**64)
    s0, s1, s2, s3 = four successive SplitMix64 outputs starting from x

and ``(s0, s1, s2, s3)`` is the state of a xoshiro256** generator.  Because
streams are keyed by match index rather than by worker, a run's result does
not depend on how matches are partitioned.

Uniform doubles take the top 53 bits of each output: ``(x >> 11) * 2**-53``.
"""
import numpy as np

ALGORITHM = "xoshiro256** (SplitMix64-seeded, per-match streams)"

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
STREAM_MULT = 0xD1B54A32D192ED03
INV_2_53 = 1.0 / 9007199254740992.0


def _rotl(x, k):
    return ((x << k) | (x >> (64 - k))) & MASK64


def splitmix64(x):
    """One SplitMix64 step; returns ``(new_state, output)``."""
    x = (x + GOLDEN_GAMMA) & MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return x, z ^ (z >> 31)


def stream_state(seed, index):
    x = (int(seed) ^ (int(index) * STREAM_MULT)) & MASK64
    state = []
    for _ in range(4):
        x, out = splitmix64(x)
        state.append(out)
    return state


class Xoshiro256:
    """Scalar pure-Python xoshiro256**.

    Mirrors the compiled kernels draw for draw, so ``match_stream(seed, j)``
    replays match ``j`` of a simulation run exactly.
    """

    def __init__(self, state):
        if len(state) != 4 or not any(state):
            raise ValueError("xoshiro256** needs four words, not all zero")
        self.s = [int(w) & MASK64 for w in state]

    def next_u64(self):
        s0, s1, s2, s3 = self.s
        result = (_rotl((s1 * 5) & MASK64, 7) * 9) & MASK64
        t = (s1 << 17) & MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self.s = [s0, s1, s2, s3]
        return result

    def random(self):
        return (self.next_u64() >> 11) * INV_2_53


def match_stream(seed, index):
    """The stream used for match ``index`` of a run seeded with ``seed``."""
    return Xoshiro256(stream_state(seed, index))


def bernoulli_threshold(p):
    """Integer threshold t with ``u < p`` iff ``(x >> 11) < t``."""
    import math

    return int(math.ceil(float(p) * 9007199254740992.0))


# -- vectorised helpers for the numpy backend --------------------------------

_U = np.uint64


def _rotl_arr(x, k):
    return (x << _U(k)) | (x >> _U(64 - k))


def _splitmix_arr(x):
    x = x + _U(GOLDEN_GAMMA)
    z = x
    z = (z ^ (z >> _U(30))) * _U(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> _U(27))) * _U(0x94D049BB133111EB)
    return x, z ^ (z >> _U(31))


def stream_states(seed, start, stop):
    """State arrays ``(4, stop-start)`` for matches ``start..stop-1``."""
    idx = np.arange(start, stop, dtype=np.uint64)
    x = _U(int(seed) & MASK64) ^ (idx * _U(STREAM_MULT))
    out = np.empty((4, idx.size), dtype=np.uint64)
    for w in range(4):
        x, out[w] = _splitmix_arr(x)
    return out


def next_u64_arr(s):
    """Advance every stream in ``s`` (shape ``(4, m)``) in place; return outputs."""
    s0, s1, s2, s3 = s[0], s[1], s[2], s[3]
    result = _rotl_arr(s1 * _U(5), 7) * _U(9)
    t = s1 << _U(17)
    s2 ^= s0
    s3 ^= s1
    s1 ^= s2
    s0 ^= s3
    s2 ^= t
    s[3] = _rotl_arr(s3, 45)
    return result


def next_double_arr(s):
    return (next_u64_arr(s) >> _U(11)).astype(np.float64) * INV_2_53
