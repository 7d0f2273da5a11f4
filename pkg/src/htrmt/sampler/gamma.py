"""Gamma(shape, 1) variates for shapes down to ~1e-6.

Shape >= 1 uses the Marsaglia-Tsang squeeze-free rejection method.  Shape < 1
uses the boost Gamma(a) = Gamma(a+1) * U^{1/a}; for a < 1e-2 the product is
formed in log space because U^{1/a} underflows long before the variate's
logarithm does.
"""
from __future__ import annotations

import numpy as np

from ..errors import UsageError
from .rng import as_generator

TINY = np.finfo(float).tiny
LOG_SPACE_BELOW = 1e-2


def _marsaglia_tsang(shape: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    d = shape - 1.0 / 3.0
    c = 1.0 / np.sqrt(9.0 * d)
    out = np.empty_like(shape)
    todo = np.arange(shape.size)
    while todo.size:
        x = rng.standard_normal(todo.size)
        u = rng.random(todo.size)
        v = 1.0 + c[todo] * x
        ok = v > 0
        v3 = np.where(ok, v * v * v, 1.0)
        dt = d[todo]
        ok &= np.log(u) < 0.5 * x * x + dt - dt * v3 + dt * np.log(v3)
        out[todo[ok]] = dt[ok] * v3[ok]
        todo = todo[~ok]
    return out


def log_gamma_variates(shape, rng) -> np.ndarray:
    """log of Gamma(shape, 1) variates, accurate even when the variate underflows."""
    rng = as_generator(rng)
    shape = np.atleast_1d(np.asarray(shape, dtype=float))
    if np.any(~(shape > 0)):
        raise UsageError("gamma shape must be positive")
    small = shape < 1
    boosted = np.where(small, shape + 1.0, shape)
    g = _marsaglia_tsang(boosted, rng)
    logs = np.log(g)
    if np.any(small):
        u = rng.random(int(small.sum()))
        logs[small] += np.log(u) / shape[small]
    return logs


def gamma_variates(shape, rng) -> np.ndarray:
    """Gamma(shape, 1) variates for an array of shapes, clamped below at the smallest normal float."""
    rng = as_generator(rng)
    shape = np.atleast_1d(np.asarray(shape, dtype=float))
    if np.any(~(shape > 0)):
        raise UsageError("gamma shape must be positive")
    if np.all(shape >= LOG_SPACE_BELOW):
        small = shape < 1
        boosted = np.where(small, shape + 1.0, shape)
        g = _marsaglia_tsang(boosted, rng)
        if np.any(small):
            u = rng.random(int(small.sum()))
            g[small] *= u ** (1.0 / shape[small])
    else:
        g = np.exp(log_gamma_variates(shape, rng))
    return np.maximum(g, TINY)


def sample_gamma(shape: float, rng) -> float:
    """One Gamma(shape, 1) variate."""
    if not shape > 0:
        raise UsageError("gamma shape must be positive")
    return float(gamma_variates(np.array([shape]), rng)[0])
