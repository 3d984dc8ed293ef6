"""Seeded, portable subset sampling.

Every stochastic operation in the package derives its generator here: a
PCG64 bit generator keyed by SeedSequence over (seed, *stream tags).  Parallel
tasks get their own tags, so results are identical at any thread count.

Subsets are drawn by reservoir selection (Algorithm R) over the candidate
pool: keep the first k items, then replace slot j <- integers(0, i+1) when
j < k for each later item i.  Only Generator.integers touches the stream,
which keeps the draw sequence easy to document and reproduce.
"""

from __future__ import annotations

import numpy as np

__all__ = ["rng_for", "sample_members", "sample_subset"]


def rng_for(seed: int, *tags: int) -> np.random.Generator:
    """PCG64 generator for the stream identified by (seed, *tags)."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence((seed, *tags))))


def sample_members(pool: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform k-subset of pool (sorted members) via reservoir selection."""
    pool = np.asarray(pool, dtype=np.int64)
    npool = pool.size
    if not 0 <= k <= npool:
        raise ValueError(f"cannot draw {k} items from a pool of {npool}")
    res = pool[:k].copy()
    if 0 < k < npool:
        slots = rng.integers(0, np.arange(k, npool, dtype=np.int64) + 1)
        for i, j in enumerate(slots):
            if j < k:
                res[j] = pool[k + i]
    return np.sort(res)


def sample_subset(n: int, k: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform k-subset of {0..n-1} (sorted members)."""
    return sample_members(np.arange(n, dtype=np.int64), k, rng)
