"""Many-trial aggregation: histograms and power-trace moments.

Trials are split into chunks that may run on a thread pool (numpy releases the
GIL in the inner loops).  Bin counts are integers summed per trial, and moment
samples are stored per trial index, so results do not depend on scheduling.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..errors import UsageError
from .sturm import sturm_counts
from .tridiag import TridiagModel, build_batch

CHUNK = 25


def resolve_threads(threads: int | None = None) -> int:
    if threads is None:
        threads = int(os.environ.get("HTRMT_THREADS", "1") or 1)
    if threads < 1:
        raise UsageError("--threads must be >= 1")
    return threads


def _map_chunks(fn, trials: int, threads: int):
    chunks = [range(s, min(s + CHUNK, trials)) for s in range(0, trials, CHUNK)]
    if threads == 1 or len(chunks) == 1:
        return [fn(c) for c in chunks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, chunks))


@dataclass
class Histogram:
    edges: np.ndarray
    counts: np.ndarray
    trials: int
    below: int
    above: int
    eigenvalues_per_trial: int
    meta: dict = field(default_factory=dict)

    @property
    def total(self) -> int:
        return self.trials * self.eigenvalues_per_trial

    @property
    def bin_mass(self) -> np.ndarray:
        return self.counts / self.total

    @property
    def density(self) -> np.ndarray:
        """Density estimate per bin; sums (times widths) to 1 minus the out-of-range mass."""
        return self.bin_mass / np.diff(self.edges)

    @property
    def out_of_range(self) -> float:
        return (self.below + self.above) / self.total

    def __eq__(self, other):
        return (isinstance(other, Histogram) and np.array_equal(self.edges, other.edges)
                and np.array_equal(self.counts, other.counts) and self.trials == other.trials
                and self.below == other.below and self.above == other.above)


def default_edges(model: TridiagModel, bins: int = 60, fold: bool = False) -> np.ndarray:
    """Range mean +/- 6 sqrt(second moment); the mean is 0 and E x^2 = alpha (per pair scaling)."""
    r = 6.0 * np.sqrt(model.alpha / model.kappa if model.kind.value == "dyson" else model.alpha)
    return np.linspace(0.0 if fold else -r, r, bins + 1)


def run_trials(model: TridiagModel, trials: int, edges, seed: int, threads: int | None = None,
               fold: bool = False) -> Histogram:
    """Aggregate Sturm-count histograms over ``trials`` independent matrices.

    With ``fold=True`` the edges must start at 0 and the histogram counts the
    positive eigenvalues only; by the exact +/- symmetry the count in (0, e_1)
    is count(< e_1) - ceil(dim/2).
    """
    if trials < 1:
        raise UsageError("trials must be >= 1")
    e = np.asarray(edges, dtype=float)
    if e.ndim != 1 or e.size < 2 or np.any(np.diff(e) <= 0):
        raise UsageError("edges must be increasing")
    if fold and e[0] != 0:
        raise UsageError("folded histograms need edges starting at 0")
    threads = resolve_threads(threads)
    dim = model.dim
    shifts = e[1:] if fold else e

    def work(chunk):
        b = build_batch(model, seed, chunk)
        return sturm_counts(b, shifts).sum(axis=0)

    c = np.sum(_map_chunks(work, trials, threads), axis=0)
    if fold:
        half = (dim + 1) // 2
        cum = np.concatenate(([half * trials], c))
        counts = np.diff(cum)
        per = dim // 2
        return Histogram(e, counts, trials, 0, int(per * trials - (cum[-1] - half * trials)), per,
                         {"seed": seed, "folded": True, **model.to_dict()})
    return Histogram(e, np.diff(c), trials, int(c[0]), int(dim * trials - c[-1]), dim,
                     {"seed": seed, "folded": False, **model.to_dict()})


def _band_power_moments(b: np.ndarray, pmax: int):
    """(T^p)_{11} and tr(T^p) for p = 0..pmax, T zero-diagonal tridiagonal, batched over rows of b."""
    trials, m = b.shape
    n = m + 1
    pad = pmax + 2
    bext = np.zeros((trials, n + 2 * pad))
    bext[:, pad : pad + m] = b
    i = np.arange(n)
    band = {0: np.ones((trials, n))}
    first = np.zeros((trials, pmax + 1))
    trace = np.zeros((trials, pmax + 1))
    first[:, 0] = 1.0
    trace[:, 0] = n
    zero = np.zeros((trials, n))
    for p in range(1, pmax + 1):
        new = {}
        for o in range(-p, p + 1, 2):
            j = i + o
            left = band.get(o - 1, zero) * bext[:, pad + j - 1]
            right = band.get(o + 1, zero) * bext[:, pad + j]
            new[o] = left + right
        band = new
        if 0 in band:
            first[:, p] = band[0][:, 0]
            trace[:, p] = band[0].sum(axis=1)
    return first, trace


def jackknife(samples: np.ndarray):
    """Mean and jackknife standard error along axis 0."""
    x = np.asarray(samples, dtype=float)
    t = x.shape[0]
    mean = x.mean(axis=0)
    if t < 2:
        return mean, np.full_like(mean, np.nan)
    loo = (x.sum(axis=0) - x) / (t - 1)
    se = np.sqrt((t - 1) / t * ((loo - loo.mean(axis=0)) ** 2).sum(axis=0))
    return mean, se


@dataclass
class MomentEstimate:
    spectral: np.ndarray
    spectral_se: np.ndarray
    dos: np.ndarray
    dos_se: np.ndarray
    trials: int

    def squared(self):
        """Moments in the squared variable y = x^2 (even powers), index l = 0..pmax//2."""
        return (self.spectral[::2], self.spectral_se[::2], self.dos[::2], self.dos_se[::2])


def empirical_moments(model: TridiagModel, pmax: int, trials: int, seed: int,
                      threads: int | None = None) -> MomentEstimate:
    """Spectral-measure moments (T^p)_{11} and density-of-states moments tr(T^p)/dim, p <= pmax."""
    if not 0 <= pmax <= 12:
        raise UsageError("pmax must be in 0..12")
    if trials < 1:
        raise UsageError("trials must be >= 1")
    threads = resolve_threads(threads)

    def work(chunk):
        b = build_batch(model, seed, chunk)
        return _band_power_moments(b, pmax)

    parts = _map_chunks(work, trials, threads)
    first = np.concatenate([p[0] for p in parts])
    trace = np.concatenate([p[1] for p in parts]) / model.dim
    v, vse = jackknife(first)
    w, wse = jackknife(trace)
    return MomentEstimate(v, vse, w, wse, trials)
