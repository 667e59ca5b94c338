"""Deterministic random-stream derivation.

All randomness in the package flows through :func:`derive_rng`, which maps a
master seed plus an integer path (for example ``(cell, replication)``) to an
independent generator. Streams depend only on the seed and path, never on
execution order or thread count, so any parallel schedule reproduces the
same results bit for bit.
"""

from __future__ import annotations

import numpy as np

from .errors import InputError


def _check_path(seed: int, path: tuple[int, ...]) -> list[int]:
    parts = [seed, *path]
    out = []
    for p in parts:
        q = int(p)
        if q < 0:
            raise InputError(f"seed path entries must be non-negative, got {q}")
        out.append(q)
    return out


def derive_rng(seed: int, *path: int) -> np.random.Generator:
    """Generator for the stream identified by (seed, *path)."""
    return np.random.default_rng(np.random.SeedSequence(_check_path(seed, path)))


def derive_seed(seed: int, *path: int) -> int:
    """Collapse (seed, *path) into a single unsigned integer seed."""
    ss = np.random.SeedSequence(_check_path(seed, path))
    return int(ss.generate_state(1, np.uint64)[0])
