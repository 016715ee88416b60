import hashlib
import typing as t

import numpy as np

Seed = int

__all__ = [
    'Seed',
    'derive_seed',
    'make_rng',
    'spawn_rngs',
]


def derive_seed(master: Seed, *names: str) -> Seed:
    """
    Derive a named sub-stream seed from the master seed.

    The mapping is stable across processes and platforms, so every randomized stage gets the same
    stream for the same master seed.
    """

    digest = hashlib.blake2b(digest_size=8)
    digest.update(str(int(master)).encode())

    for name in names:
        digest.update(b'/')
        digest.update(name.encode())

    return int.from_bytes(digest.digest(), 'little')


def make_rng(seed: Seed, *names: str) -> np.random.Generator:
    # counter-based generator
    return np.random.Generator(np.random.Philox(derive_seed(seed, *names) if names else int(seed)))


def spawn_rngs(seed: Seed, count: int, *names: str) -> t.List[np.random.Generator]:
    root = np.random.SeedSequence(derive_seed(seed, *names) if names else int(seed))
    return [np.random.Generator(np.random.Philox(child)) for child in root.spawn(count)]
