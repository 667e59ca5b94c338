"""The uncorrected nearest-neighbor rank correlation coefficient."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import RankVector
from .errors import DimensionMismatchError
from .nn_graph import NnGraph


@dataclass(frozen=True)
class TnValue:
    """Value of the coefficient on a sample of size n.

    Finite-sample values below 0 are legitimate (n = 2 always yields -1 on
    distinct responses), so nothing is clamped.
    """

    value: float
    n: int


def chatterjee_t(ranks: RankVector, nn: NnGraph) -> TnValue:
    """Coefficient 6/(n^2-1) * sum_i min(r_i, r_nn(i)) - (2n+1)/(n-1).

    ``ranks`` and ``nn`` must come from the same sample. The sum of rank
    minima is accumulated in exact integer arithmetic and divided once, so
    the result carries a single rounding step per term of the formula.
    """
    r = ranks.r
    idx = nn.nn
    if r.shape[0] != idx.shape[0]:
        raise DimensionMismatchError(
            f"ranks have length {r.shape[0]} but nn graph has length {idx.shape[0]}"
        )
    n = int(r.shape[0])
    s = int(np.minimum(r, r[idx]).sum(dtype=np.int64))
    value = (6 * s) / (n * n - 1) - (2 * n + 1) / (n - 1)
    if not np.isfinite(value) or value > 1.5 or value < -3.0:
        raise RuntimeError(
            f"coefficient {value} outside sane range; ranks and nn graph "
            "are inconsistent or the response is pathologically tied"
        )
    return TnValue(value=float(value), n=n)
