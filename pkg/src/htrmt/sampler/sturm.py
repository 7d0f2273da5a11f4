"""Sturm-sequence eigenvalue counts for symmetric tridiagonals with zero diagonal.

For off-diagonal b the LDL^T pivots of T - t I obey
    q_1 = -t,    q_i = -t - b_{i-1}^2 / q_{i-1},
and the number of negative pivots is the number of eigenvalues below t.  A pivot
that lands exactly on zero is replaced by -pivmin as in LAPACK's bisection.
All routines loop over the matrix index and vectorize over everything else
(trials and shift points).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ToleranceError, UsageError

SAFMIN = np.finfo(float).tiny


def _pivmin(b2: np.ndarray) -> np.ndarray:
    top = b2.max(axis=-1, keepdims=True) if b2.shape[-1] else np.ones(b2.shape[:-1] + (1,))
    return SAFMIN * np.maximum(1.0, top)


def sturm_counts(superdiag, shifts) -> np.ndarray:
    """Number of eigenvalues strictly below each shift.

    ``superdiag`` has shape (n-1,) or (trials, n-1); ``shifts`` has shape (m,)
    or (trials, m).  The result has shape (m,) or (trials, m).
    """
    b = np.asarray(superdiag, dtype=float)
    single = b.ndim == 1
    if single:
        b = b[None, :]
    t = np.asarray(shifts, dtype=float)
    if t.ndim == 1:
        t = np.broadcast_to(t, (b.shape[0], t.size))
    b2 = b * b
    piv = _pivmin(b2)
    q = -t.copy()
    q = np.where(np.abs(q) < piv, -piv, q)
    count = (q < 0).astype(np.int64)
    for i in range(b.shape[1]):
        q = -t - b2[:, i : i + 1] / q
        q = np.where(np.abs(q) < piv, -piv, q)
        count += q < 0
    return count[0] if single else count


def gershgorin_bound(superdiag) -> float:
    b = np.abs(np.asarray(superdiag, dtype=float))
    if b.size == 0:
        return 0.0
    row = np.zeros(b.size + 1)
    row[:-1] += b
    row[1:] += b
    return float(row.max())


def spectrum(superdiag, rtol: float = 1e-14, max_iter: int = 200) -> np.ndarray:
    """All eigenvalues, sorted, by simultaneous bisection on Sturm counts.

    Each eigenvalue is bracketed to an absolute width rtol * (Gershgorin bound);
    the required ceiling is 1e-12 of the bound and the default is tighter.
    """
    b = np.asarray(superdiag, dtype=float)
    if b.ndim != 1:
        raise UsageError("spectrum takes one superdiagonal vector")
    if np.any(~(b > 0)):
        raise UsageError("superdiagonal entries must be positive")
    n = b.size + 1
    g = gershgorin_bound(b)
    if g == 0:
        return np.zeros(n)
    lo = np.full(n, -g * (1 + 1e-12))
    hi = np.full(n, g * (1 + 1e-12))
    k = np.arange(1, n + 1)
    tol = rtol * g
    for _ in range(max_iter):
        active = hi - lo > tol
        if not active.any():
            break
        idx = np.nonzero(active)[0]
        mid = 0.5 * (lo[idx] + hi[idx])
        c = sturm_counts(b, mid)
        up = c >= k[idx]
        hi[idx[up]] = mid[up]
        lo[idx[~up]] = mid[~up]
    else:
        raise ToleranceError(f"bisection did not converge in {max_iter} iterations")
    return np.sort(0.5 * (lo + hi))


@dataclass
class BinCounts:
    counts: np.ndarray
    below: int
    above: int

    @property
    def total(self) -> int:
        return int(self.counts.sum()) + self.below + self.above


def sturm_histogram(superdiag, edges) -> BinCounts:
    """Exact counts of eigenvalues in [e_k, e_{k+1}) from Sturm counts at the edges."""
    e = np.asarray(edges, dtype=float)
    if e.ndim != 1 or e.size < 2 or np.any(np.diff(e) <= 0):
        raise UsageError("edges must be an increasing grid of at least two points")
    b = np.asarray(superdiag, dtype=float)
    c = sturm_counts(b, e)
    n = b.size + 1
    return BinCounts(np.diff(c), int(c[0]), int(n - c[-1]))


def bin_spectrum(eigenvalues, edges) -> BinCounts:
    """The same bins filled from explicit eigenvalues."""
    e = np.asarray(edges, dtype=float)
    lam = np.asarray(eigenvalues, dtype=float)
    pos = np.searchsorted(e, lam, side="right")
    counts = np.bincount(pos, minlength=e.size + 1)
    return BinCounts(counts[1 : e.size], int(counts[0]), int(counts[e.size]))
