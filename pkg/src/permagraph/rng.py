"""Deterministic random-stream derivation.

All randomness in the package flows from a single integer seed. Independent
consumers (perturbation cells, sensitivity permutations, spreading runs, ...)
each derive a named child stream, so results do not depend on the order in
which cells are evaluated and cells can run concurrently.
"""

from __future__ import annotations

import hashlib

import numpy as np


def derive_seed(seed: int, *tokens: object) -> int:
    """Derive a child seed from a root seed and a name path.

    The tokens are hashed together with the root seed (SHA-256 over a
    canonical text encoding), so every distinct (seed, tokens) pair gets an
    independent, platform-stable stream seed.
    """
    material = "\x1f".join([str(int(seed))] + [repr(t) for t in tokens])
    digest = hashlib.sha256(material.encode("utf-8")).digest()
    return int.from_bytes(digest[:16], "big")


def derive_rng(seed: int, *tokens: object) -> np.random.Generator:
    """Return a numpy Generator for the named child stream."""
    return np.random.default_rng(derive_seed(seed, *tokens))


def permutation(seed: int, n: int, *tokens: object) -> list[int]:
    """A seeded Fisher-Yates permutation of range(n) from a named stream."""
    rng = derive_rng(seed, *tokens)
    return [int(v) for v in rng.permutation(n)]
