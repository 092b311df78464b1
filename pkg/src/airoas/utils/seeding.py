import hashlib

import numpy as np


def derive_seed(master_seed: int, index: int) -> int:
    """
    Stable 64-bit seed for item ``index`` of a run seeded with ``master_seed``.

    Seeds depend only on the pair, so adding episodes never changes the seeds
    of earlier ones.
    """
    digest = hashlib.blake2b(
        f"{master_seed}:{index}".encode(), digest_size=8
    ).digest()
    return int.from_bytes(digest, "little")


def make_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def child_rngs(rng: np.random.Generator, n: int) -> list[np.random.Generator]:
    """Independent generators spawned from ``rng``."""
    return list(rng.spawn(n))
