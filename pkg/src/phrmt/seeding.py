"""Deterministic random-stream handling for ensemble runs.

Ensemble loops partition work into fixed-size chunks, each driven by an
independently spawned child stream of the root seed.  The chunk layout
depends only on the total count, never on the worker count, so results are
byte-identical no matter how many threads execute the chunks.
"""

from __future__ import annotations

import numpy as np

__all__ = ["generator", "spawn_generators", "chunk_sizes", "CHUNK"]

CHUNK = 8192


def generator(seed: int) -> np.random.Generator:
    """Root generator for a 64-bit seed."""
    return np.random.default_rng(np.random.SeedSequence(seed))


def chunk_sizes(count: int, chunk: int = CHUNK) -> list[int]:
    """Fixed chunk layout for a workload of ``count`` items."""
    if count < 1:
        raise ValueError("count must be >= 1")
    full, rest = divmod(count, chunk)
    return [chunk] * full + ([rest] if rest else [])


def spawn_generators(seed: int, n: int) -> list[np.random.Generator]:
    """n independent child generators of one root seed."""
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(n)]
