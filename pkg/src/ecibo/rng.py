"""Deterministic, splittable random streams.

Every random draw in a run comes from a numpy ``Generator`` built on PCG64
and a ``SeedSequence`` whose spawn key names the purpose of the stream.
Streams with different keys are statistically independent, and the same
``(seed, *keys)`` always gives the same sequence on every platform.
"""

import zlib

import numpy as np

# purpose keys
DOE = 1
ALGORITHM = 2
GA = 3
ORDERING = 4
COORDINATE = 5
FALLBACK = 6


def algorithm_key(name: str) -> int:
    """Stable integer key for an algorithm name."""
    return zlib.crc32(name.encode("utf-8"))


def stream(seed: int, *keys: int) -> np.random.Generator:
    """Return the generator for ``seed`` and the purpose path ``keys``."""
    if seed < 0:
        raise ValueError(f"seed must be nonnegative, got {seed}")
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(k) for k in keys))
    return np.random.Generator(np.random.PCG64(ss))


def as_generator(rng) -> np.random.Generator:
    """Accept a Generator, an integer seed, or None."""
    if isinstance(rng, np.random.Generator):
        return rng
    if rng is None:
        return np.random.default_rng()
    return stream(int(rng))
