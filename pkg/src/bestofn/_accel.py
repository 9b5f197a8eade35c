"""Backend selection for the hot kernels.

Numba-compiled kernels are used when numba imports cleanly and the
environment variable ``BESTOFN_NO_NUMBA`` is unset (or ``0``).  Otherwise
the vectorised numpy kernels are used.  Both produce identical results for
identical inputs.
"""
import os

_FLAG = os.environ.get("BESTOFN_NO_NUMBA", "0").strip().lower()

try:
    import numba  # noqa: F401

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and _FLAG in ("", "0", "false", "no")


def default_backend():
    return "numba" if USE_NUMBA else "numpy"


def worker_count():
    """Worker cap from ``BESTOFN_THREADS``; defaults to machine parallelism."""
    raw = os.environ.get("BESTOFN_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1
