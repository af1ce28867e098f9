"""Shared corpus builders for the test suite.

All randomness is seeded through GeneratorConfig, so every run sees the
same models.
"""

import numpy as np

from zzham import GeneratorConfig, ZigZagHamiltonian, random_gzz

BASE_SEED = 20260810

PATTERN_CYCLE = ("full", "zigzag", "banded:2")


def corpus_gap(dim, pattern):
    """A feasible spectral gap: full patterns need room for 2m separated values."""
    return min(0.1, 1.0 / dim) if pattern == "full" else 0.1


def gzz_corpus(dims, count, patterns=PATTERN_CYCLE, seed0=BASE_SEED, distinct=False):
    """Deterministic list of random models cycling through the patterns."""
    models = []
    for dim in dims:
        for k in range(count):
            pattern = patterns[k % len(patterns)]
            gap = 0.8 / dim if distinct else corpus_gap(dim, pattern)
            cfg = GeneratorConfig(
                dim=dim,
                pattern=pattern,
                seed=seed0 + 1009 * dim + k,
                gap=gap,
                range=1.0,
            )
            models.append(random_gzz(cfg, distinct_spectrum=distinct))
    return models


def random_zigzag(M, variant, seed, gap=0.1, scale=1.0):
    """Random zig-zag model with neighbours separated by at least gap."""
    rng = np.random.default_rng(seed)
    a = np.empty(M)
    a[0] = rng.uniform(-scale, scale)
    for k in range(1, M):
        while True:
            x = rng.uniform(-scale, scale)
            if abs(x - a[k - 1]) > gap and abs(x) > gap:
                a[k] = x
                break
    c = rng.uniform(gap, scale, size=M - 1) * rng.choice([-1.0, 1.0], size=M - 1)
    return ZigZagHamiltonian(variant, a, c)
