"""Counter-based random streams.

Each trial draws from a Philox generator keyed by (master_seed, trial), so a
trial's numbers depend only on those two integers and never on which thread
ran it or in what order.
"""
from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1


def trial_stream(master_seed: int, trial: int) -> np.random.Generator:
    key = np.array([master_seed & MASK64, trial & MASK64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def as_generator(rng) -> np.random.Generator:
    """Accept a Generator or an int seed (trial 0 of that seed)."""
    if isinstance(rng, np.random.Generator):
        return rng
    return trial_stream(int(rng), 0)
