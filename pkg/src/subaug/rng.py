"""Deterministic random streams.

All randomness flows through numpy's PCG64 generator, whose output for a
given SeedSequence is fixed across platforms and numpy releases. The engine
consumes one master stream; the shuffle/substitution baselines derive one
independent stream per generated example from (seed, ordinal), so outputs
do not depend on generation order or thread count.
"""

from __future__ import annotations

import numpy as np

from .errors import ConfigError

MAX_SEED = 2**64 - 1


def check_seed(seed: int) -> int:
    if not isinstance(seed, int) or isinstance(seed, bool) or not (0 <= seed <= MAX_SEED):
        raise ConfigError("seed must be an integer in [0, 2^64 - 1]")
    return seed


def master_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(check_seed(seed))))


def stream_rng(seed: int, ordinal: int) -> np.random.Generator:
    seq = np.random.SeedSequence(check_seed(seed), spawn_key=(ordinal,))
    return np.random.Generator(np.random.PCG64(seq))
