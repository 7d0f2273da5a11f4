"""Adaptive composite Gauss-Legendre quadrature.

Each panel is integrated with the 15-point rule and compared against the sum of
its two halves; panels whose disagreement exceeds their share of the absolute
tolerance are bisected.  Integrands are evaluated on numpy arrays and may
return several components at once (shape (k, n)), which lets one pass produce
a density's mass and its moments together.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import ToleranceError

NODES, WEIGHTS = np.polynomial.legendre.leggauss(15)
ABS_TOL = 1e-10


@dataclass
class QuadResult:
    value: np.ndarray | float
    error: float
    evaluations: int


def _rule(f, a, b):
    half = 0.5 * (b - a)
    x = a + half * (NODES + 1.0)
    y = np.asarray(f(x), dtype=float)
    return half * (y @ WEIGHTS)


def integrate(f, a: float, b: float, tol: float = ABS_TOL, max_panels: int = 20000) -> QuadResult:
    """Integrate f over [a, b] to absolute tolerance ``tol``."""
    if b == a:
        return QuadResult(0.0, 0.0, 0)
    sign = 1.0
    if b < a:
        a, b, sign = b, a, -1.0
    whole = _rule(f, a, b)
    evals = 15
    stack = [(a, b, whole)]
    total = 0.0
    err = 0.0
    width = b - a
    while stack:
        lo, hi, est = stack.pop()
        mid = 0.5 * (lo + hi)
        left, right = _rule(f, lo, mid), _rule(f, mid, hi)
        evals += 30
        refined = left + right
        diff = float(np.max(np.abs(refined - est)))
        share = tol * (hi - lo) / width
        if diff <= max(share, 1e-15 * float(np.max(np.abs(refined)))) or hi - lo < 1e-13 * width:
            total = total + refined
            err += diff
            continue
        if evals > max_panels * 45:
            raise ToleranceError(f"quadrature on [{a}, {b}] exceeded {max_panels} panels")
        stack.append((mid, hi, right))
        stack.append((lo, mid, left))
    return QuadResult(sign * total, err, evals)


def truncation_point(f, a: float, step: float, rel: float = 1e-16, max_steps: int = 10000) -> float:
    """March right from ``a`` in ``step`` increments until |f| falls below rel * (peak seen)."""
    peak = 0.0
    x = a
    below = 0
    for _ in range(max_steps):
        x += step
        v = float(np.max(np.abs(np.asarray(f(np.array([x])), dtype=float))))
        if not math.isfinite(v):
            continue
        peak = max(peak, v)
        if peak > 0 and v < rel * peak:
            below += 1
            if below >= 2:
                return x
        else:
            below = 0
    raise ToleranceError("integrand envelope never decayed")


def integrate_semi_infinite(f, a: float, step: float = 1.0, tol: float = ABS_TOL, rel: float = 1e-16) -> QuadResult:
    """Integrate over [a, inf), truncating where the envelope drops below ``rel`` of its peak."""
    end = truncation_point(f, a, step, rel)
    return integrate(f, a, end, tol)


def integrate_log_left(f, x0: float, tol: float = ABS_TOL, rel: float = 1e-16) -> QuadResult:
    """Integrate over (0, x0] in s = ln x, for integrands with an integrable x^c singularity at 0."""
    s0 = math.log(x0)

    def g(s):
        x = np.exp(s)
        return np.asarray(f(x), dtype=float) * x

    def g_rev(u):
        return g(s0 - u)

    cut = truncation_point(g_rev, 0.0, 2.0, rel)
    return integrate(g, s0 - cut, s0, tol)
