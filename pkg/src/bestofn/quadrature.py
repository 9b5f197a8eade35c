"""Adaptive Gauss-Legendre quadrature with recursive bisection.

Each panel is integrated with a 15-point rule and again as two half panels;
the difference is the panel's error estimate.  A panel is accepted once its
estimate falls below its share of the tolerance.
"""
from dataclasses import dataclass

import numpy as np

NODES, WEIGHTS = np.polynomial.legendre.leggauss(15)


class QuadratureError(RuntimeError):
    def __init__(self, message, estimate, error):
        super().__init__(f"{message} (estimate={estimate!r}, error~{error:.3g})")
        self.estimate = estimate
        self.error = error


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error: float
    panels: int

    def __float__(self):
        return self.value


def _gl15(f, a, b):
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    return half * float(np.dot(WEIGHTS, f(mid + half * NODES)))


def integrate(f, a, b, tol=1e-12, max_panels=20000):
    """Integrate a vectorised ``f`` over ``[a, b]`` to absolute error ``tol``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    total = 0.0
    err = 0.0
    accepted = 0
    stack = [(a, b, _gl15(f, a, b), tol)]
    evaluated = 1
    while stack:
        lo, hi, whole, local_tol = stack.pop()
        mid = 0.5 * (lo + hi)
        left = _gl15(f, lo, mid)
        right = _gl15(f, mid, hi)
        evaluated += 2
        est = abs(left + right - whole)
        if est <= local_tol or hi - lo < 1e-14 * max(1.0, abs(b - a)):
            total += left + right
            err += est
            accepted += 1
            continue
        if evaluated > max_panels:
            remaining = sum(w for _, _, w, _ in stack) + left + right
            raise QuadratureError("subdivision budget exhausted", total + remaining, err + est)
        stack.append((mid, hi, right, 0.5 * local_tol))
        stack.append((lo, mid, left, 0.5 * local_tol))
    return QuadratureResult(total, err, accepted)
