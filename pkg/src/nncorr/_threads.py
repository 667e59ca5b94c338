"""Worker-count resolution for the few operations that can parallelize.

Priority: explicit ``set_workers`` call, then the ``ACBC_THREADS``
environment variable, then all available cores. Worker count only affects
speed; every computation is deterministic regardless of it.
"""

from __future__ import annotations

import os

_workers: int | None = None


def set_workers(k: int | None) -> None:
    global _workers
    _workers = None if k is None or k <= 0 else int(k)


def get_workers() -> int:
    if _workers is not None:
        return _workers
    env = os.environ.get("ACBC_THREADS", "").strip()
    if env:
        try:
            k = int(env)
        except ValueError:
            k = 0
        if k > 0:
            return k
    return os.cpu_count() or 1
