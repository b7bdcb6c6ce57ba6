"""Deterministic child-seed derivation.

Every randomized stage draws from random.Random(derive_seed(...)) so runs
are reproducible across processes. Seeding random.Random with a tuple
would hash it, and string hashes are salted per process.
"""

import hashlib


def derive_seed(seed: int, *tags) -> int:
    """Stable 64-bit child seed from a parent seed and a tag path."""
    blob = repr((seed,) + tags).encode()
    return int.from_bytes(hashlib.blake2b(blob, digest_size=8).digest(), "big")
