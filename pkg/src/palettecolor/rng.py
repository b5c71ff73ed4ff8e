"""Stateless per-vertex random streams.

Color lists must be reproducible from (seed, iteration, original vertex id)
alone, independent of iteration order and worker count.  Stateful generators
cannot give that, so list sampling runs on counter-based splitmix64 streams:
every draw is a pure function of (key, counter), and keys are derived by
hashing the triple.  All arithmetic is uint64 with wraparound, so results
are bit-identical across platforms.
"""

from __future__ import annotations

import numpy as np

_GOLDEN_INT = 0x9E3779B97F4A7C15
_MASK64 = (1 << 64) - 1
_GOLDEN = np.uint64(_GOLDEN_INT)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


def mix64(x) -> np.ndarray:
    """splitmix64 finalizer; uniform avalanche over uint64 scalars or arrays."""
    z = np.asarray(x, dtype=np.uint64).copy()
    z ^= z >> np.uint64(30)
    z *= _MIX1
    z ^= z >> np.uint64(27)
    z *= _MIX2
    z ^= z >> np.uint64(31)
    return z


def stream_keys(seed: int, iteration: int, vertex_ids) -> np.ndarray:
    """One 64-bit stream key per vertex, from (seed, iteration, original id)."""
    base = mix64((seed + _GOLDEN_INT * iteration) & _MASK64)
    vids = np.asarray(vertex_ids, dtype=np.uint64)
    return mix64(vids * _GOLDEN + base)


def draws(keys: np.ndarray, counter: int) -> np.ndarray:
    """The counter-th uniform uint64 of each stream."""
    return mix64(keys + np.uint64(((counter + 1) * _GOLDEN_INT) & _MASK64))


def sample_distinct(keys: np.ndarray, pool: int, k: int) -> np.ndarray:
    """Sample k distinct ints from [0, pool) per stream, rows sorted.

    Floyd's algorithm, vectorized across streams: for j = pool-k .. pool-1
    draw t uniform on [0, j]; take t unless already chosen, else j.  Uniform
    over k-subsets, and row r depends only on keys[r].  Vertex rows are
    chunked so the chosen-bitmap stays under ~32 MB.
    """
    if not 0 < k <= pool:
        raise ValueError(f"need 0 < k <= pool, got k={k} pool={pool}")
    keys = np.asarray(keys, dtype=np.uint64)
    n = keys.shape[0]
    out = np.empty((n, k), dtype=np.int64)
    chunk = max(1, (1 << 25) // max(pool, 1))
    for lo in range(0, n, chunk):
        hi = min(n, lo + chunk)
        kslice = keys[lo:hi]
        rows = np.arange(hi - lo)
        chosen = np.zeros((hi - lo, pool), dtype=bool)
        for step, j in enumerate(range(pool - k, pool)):
            t = (draws(kslice, step) % np.uint64(j + 1)).astype(np.int64)
            pick = np.where(chosen[rows, t], j, t)
            chosen[rows, pick] = True
            out[lo:hi, step] = pick
    out.sort(axis=1)
    return out
