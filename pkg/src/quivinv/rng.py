"""Seeded, counter-based random streams.

Every random draw in the package comes from ``stream(seed, *labels)``; the
labels select an independent Philox key so that no global state is shared
and results do not depend on call order across unrelated components.
"""

import zlib

import numpy as np


def _label_key(label):
    if isinstance(label, int):
        return label & 0xFFFFFFFF
    return zlib.crc32(str(label).encode())


def stream(seed, *labels):
    """Return a ``numpy.random.Generator`` backed by Philox for ``(seed, labels)``."""
    entropy = [int(seed) & 0xFFFFFFFFFFFFFFFF] + [_label_key(x) for x in labels]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))


def small_int(rng, bound=5):
    return int(rng.integers(-bound, bound + 1))
