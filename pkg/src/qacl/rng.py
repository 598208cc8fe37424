"""Deterministic, splittable random streams.

Every sampling operation in the package draws from an explicit stream.
Streams are derived by name from a root seed, so independent components
(trials, schedulers, measurement draws) never share state and runs are
bit-reproducible for a given seed.
"""

from __future__ import annotations

import hashlib

import numpy as np


def _label_entropy(label) -> int:
    digest = hashlib.sha256(repr(label).encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


class RngStream:
    """A named random stream backed by a counter-based generator.

    ``derive(*labels)`` yields an independent child stream; deriving the
    same labels from the same root always yields the same stream.
    """

    def __init__(self, seed: int, _path: tuple = ()):
        self.seed = int(seed)
        self.path = tuple(_path)
        entropy = [self.seed & 0xFFFFFFFFFFFFFFFF] + [_label_entropy(p) for p in self.path]
        self._gen = np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))

    def derive(self, *labels) -> "RngStream":
        return RngStream(self.seed, self.path + tuple(labels))

    def bit(self) -> int:
        return int(self._gen.integers(0, 2))

    def integer(self, low: int, high: int) -> int:
        """Uniform integer in [low, high)."""
        return int(self._gen.integers(low, high))

    def uniform(self) -> float:
        return float(self._gen.random())

    def choice_index(self, weights) -> int:
        """Sample an index proportionally to ``weights`` (must sum to ~1)."""
        r = self._gen.random()
        acc = 0.0
        for i, w in enumerate(weights):
            acc += w
            if r < acc:
                return i
        return len(weights) - 1

    def parity_bitstring(self, n: int, parity: int) -> int:
        """Uniform n-bit integer whose popcount has the given parity."""
        if n < 1:
            raise ValueError("n must be >= 1")
        x = int(self._gen.integers(0, 1 << (n - 1)))
        x <<= 1
        if bin(x).count("1") % 2 != parity % 2:
            x |= 1
        return x

    def __repr__(self) -> str:  # pragma: no cover
        return f"RngStream(seed={self.seed}, path={self.path})"
