"""Seeded random streams.

Every sampler in the package draws from ``numpy.random.Generator`` backed by
the Philox-4x64 counter-based bit generator. A seed is an unsigned 64-bit
integer; per-trial streams are derived from ``(master_seed, trial_index)``
through ``numpy.random.SeedSequence`` so trials never share state.
"""

from __future__ import annotations

import numpy as np

SEED_MAX = 2**64 - 1


def _check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed <= SEED_MAX:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(_check_seed(seed)))


def trial_seed(master_seed: int, index: int) -> int:
    """Seed for trial ``index`` of an experiment run under ``master_seed``."""
    ss = np.random.SeedSequence([_check_seed(master_seed), int(index)])
    return int(ss.generate_state(1, dtype=np.uint64)[0])
