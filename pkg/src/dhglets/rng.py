"""Seeded, portable random-number plumbing shared by all sampling code.

Every stochastic routine in the package is driven by a 64-bit master seed
through a single generator family (PCG64), so identical (graph, seed,
budget) inputs reproduce bitwise-identical outputs on every platform.  The
algorithm identifier below is recorded in all machine-readable outputs.
"""

from __future__ import annotations

import numpy as np

RNG_ALGORITHM = "numpy-pcg64"

# Stream ids used when deriving independent child seeds from a master seed.
STREAM_RANDOMIZE = 1  # configuration-model randomizations
STREAM_COUNT = 2      # counting runs inside composite pipelines
STREAM_TRIAL = 3      # repeated CLI trials
STREAM_BATCH = 4      # batched estimator runs
STREAM_INPUT = 5      # per-input pipelines (similarity)


def make_rng(seed: int) -> np.random.Generator:
    """PCG64 generator for a non-negative integer seed."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def derive_seed(seed: int, *key: int) -> int:
    """Deterministic 64-bit child seed for a (master seed, stream key) pair.

    Children with distinct keys are statistically independent, which lets
    composite pipelines (randomize-then-count, repeated trials, batches)
    stay reproducible from one master seed.
    """
    ss = np.random.SeedSequence(seed, spawn_key=tuple(key))
    return int(ss.generate_state(1, np.uint64)[0])
