"""Deterministic, platform-stable RNG derivation.

Run seeds are combined with stable identity keys (problem names, config
fingerprints, repetition counters) through SHA-256 so that derived streams
never depend on Python's per-process hash randomization.
"""

from __future__ import annotations

import hashlib

import numpy as np

_WORD = (1 << 64) - 1


def seed_sequence(*keys) -> np.random.SeedSequence:
    entropy: list[int] = []
    for key in keys:
        if isinstance(key, (int, np.integer)):
            entropy.append(int(key) & _WORD)
        else:
            digest = hashlib.sha256(str(key).encode("utf-8")).digest()
            entropy.append(int.from_bytes(digest[:16], "little"))
    return np.random.SeedSequence(entropy)


def rng_for(*keys) -> np.random.Generator:
    return np.random.default_rng(seed_sequence(*keys))
