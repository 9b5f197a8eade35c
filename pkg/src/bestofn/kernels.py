"""Kernel dispatch between the numba and numpy backends."""
from . import _accel

_BACKENDS = {}


def get(backend=None):
    """Return the kernel module for ``backend`` ("numba", "numpy" or None)."""
    name = backend or _accel.default_backend()
    if name not in _BACKENDS:
        if name == "numba":
            if not _accel.HAVE_NUMBA:
                raise RuntimeError("numba backend requested but numba is not installed")
            from . import _kernels_numba as mod
        elif name == "numpy":
            from . import _kernels_numpy as mod
        else:
            raise ValueError(f"unknown backend {name!r}")
        _BACKENDS[name] = mod
    return _BACKENDS[name]
