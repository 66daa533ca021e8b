"""Deterministic, parallelism-proof random streams.

Every Monte Carlo routine in the package draws from counter-based
Philox generators keyed by a hash of (seed, purpose tags).  Work is
partitioned into numbered streams whose results are combined in stream
order, so output is bit-identical however the streams are scheduled.
"""

from __future__ import annotations

import hashlib

import numpy as np

_INV_2_53 = 2.0 ** -53


def stream_rng(seed: int, *tags) -> np.random.Generator:
    """Philox generator keyed by SHA-256 of (seed, *tags)."""
    label = "|".join(str(t) for t in (seed, *tags)).encode()
    digest = hashlib.sha256(label).digest()
    key = np.frombuffer(digest[:16], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def open_uniforms(rng: np.random.Generator, shape) -> np.ndarray:
    """Uniform draws strictly inside (0, 1), safe for inverse-CDF maps."""
    k = rng.integers(0, 1 << 53, size=shape, dtype=np.uint64)
    return (k.astype(np.float64) + 0.5) * _INV_2_53


class KahanSum:
    """Compensated accumulator; order-stable cross-chunk reduction."""

    __slots__ = ("total", "_c")

    def __init__(self) -> None:
        self.total = 0.0
        self._c = 0.0

    def add(self, value: float) -> None:
        y = value - self._c
        t = self.total + y
        self._c = (t - self.total) - y
        self.total = t
