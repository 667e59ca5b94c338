"""Exact nearest-neighbor index computation under the Euclidean metric.

Two interchangeable constructions are provided: :func:`build_nn` (kd-tree
backed for low dimension) and :func:`nn_brute_force` (the literal argmin
double loop, kept as a testing oracle). Both resolve distance ties to the
smallest index and return identical output on every input; the choice
between them is purely a performance knob.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from . import _threads
from .dataset import _as_matrix
from .errors import InsufficientRowsError

# kd-trees stop paying off in high dimension; brute force is always correct.
_TREE_MAX_DIM = 15
# Below this size the vectorized scan beats tree construction overhead.
_TREE_MIN_N = 65
# Relative slack when collecting tie candidates from the tree. Far larger
# than any float rounding discrepancy, far smaller than any genuine gap.
_TIE_SLACK = 1e-9


@dataclass(frozen=True)
class NnGraph:
    """For each row i, the index nn[i] != i of its nearest other row.

    ``dist[i]`` is the Euclidean distance to that neighbor; ties are broken
    toward the smallest index. Duplicate rows legitimately yield zero
    distances.
    """

    nn: np.ndarray
    dist: np.ndarray


def _validate(x) -> np.ndarray:
    arr = _as_matrix(x)
    if arr.shape[0] < 2:
        raise InsufficientRowsError(f"need at least 2 points, got {arr.shape[0]}")
    return np.ascontiguousarray(arr)


def _scan_row(x: np.ndarray, i: int) -> tuple[int, float]:
    # Exact squared distances from row i to every row; self excluded via inf.
    d2 = ((x - x[i]) ** 2).sum(axis=1)
    d2[i] = np.inf
    j = int(np.argmin(d2))
    return j, float(np.sqrt(d2[j]))


def nn_brute_force(x) -> NnGraph:
    """Literal O(n^2 d) evaluation of the nearest-neighbor definition.

    np.argmin returns the first minimizer, which is exactly the
    smallest-index tie rule.
    """
    arr = _validate(x)
    n = arr.shape[0]
    nn = np.empty(n, dtype=np.int64)
    dist = np.empty(n, dtype=np.float64)
    for i in range(n):
        nn[i], dist[i] = _scan_row(arr, i)
    return NnGraph(nn=nn, dist=dist)


def build_nn(x, workers: int | None = None) -> NnGraph:
    """Exact nearest neighbors of every row among the other rows.

    Uses a kd-tree for d <= 15 (and n large enough for it to pay off),
    brute force otherwise. Candidate sets returned by the tree are re-scored
    with the same exact arithmetic as the brute-force path, so tie handling
    and output are identical between the two.
    """
    arr = _validate(x)
    n, d = arr.shape
    if d > _TREE_MAX_DIM or n < _TREE_MIN_N:
        return nn_brute_force(arr)
    if workers is None:
        workers = _threads.get_workers()

    tree = cKDTree(arr)
    dk, _ = tree.query(arr, k=2, workers=workers)
    # Second-smallest distance including self equals the nearest-other
    # distance whether or not duplicates are present.
    dmin = dk[:, 1]
    radius = dmin * (1.0 + _TIE_SLACK)
    balls = tree.query_ball_point(arr, radius, workers=workers, return_sorted=True)

    nn = np.empty(n, dtype=np.int64)
    dist = np.empty(n, dtype=np.float64)
    idx = np.arange(n)
    lens = np.fromiter((len(b) for b in balls), dtype=np.intp, count=n)

    # Generic case: the ball holds exactly {i, neighbor}; fully vectorized.
    pair = lens == 2
    if pair.any():
        pmat = np.asarray([balls[i] for i in idx[pair]], dtype=np.int64)
        other = np.where(pmat[:, 0] == idx[pair], pmat[:, 1], pmat[:, 0])
        rows = idx[pair]
        d2 = ((arr[rows] - arr[other]) ** 2).sum(axis=1)
        nn[rows] = other
        dist[rows] = np.sqrt(d2)

    # Tied or degenerate rows: re-score candidates exactly, smallest index wins.
    for i in idx[~pair]:
        cand = [j for j in balls[i] if j != i]
        if not cand:
            # The ball always contains the true neighbor by construction;
            # rescan defensively rather than fail if that ever breaks.
            nn[i], dist[i] = _scan_row(arr, int(i))
            continue
        c = np.asarray(cand, dtype=np.int64)
        d2 = ((arr[c] - arr[i]) ** 2).sum(axis=1)
        k = int(np.argmin(d2))
        nn[i] = c[k]
        dist[i] = float(np.sqrt(d2[k]))

    return NnGraph(nn=nn, dist=dist)
