"""Deterministic seed splitting: one master seed, per-purpose derived seeds.

derive(seed, *salts) folds each salt into the 64-bit state with the
splitmix-style mixing constant, so distinct purposes get independent
streams and identical invocations are reproducible bit for bit.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15

# salt registry (documented in the README)
SALT_A = 1        # change-of-variables matrix
SALT_ALPHA = 2    # fiber base point
SALT_Q = 3        # congruence transform, combined with the system index
SALT_RETRY = 4    # per-retry reseeding
SALT_SAMPLE = 5   # verification sampling
SALT_BENCH = 6    # benchmark instance generation


def derive(seed: int, *salts: int) -> int:
    h = seed & _MASK
    for s in salts:
        h ^= (s + _GOLDEN + ((h << 6) & _MASK) + (h >> 2)) & _MASK
        h = (h * 0xBF58476D1CE4E5B9) & _MASK
        h ^= h >> 31
    return h
