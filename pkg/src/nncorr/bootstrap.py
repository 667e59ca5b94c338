"""m-out-of-n bootstrap variance estimates and normal-quantile intervals.

Subsamples of size m (default floor(sqrt(n))) are drawn with replacement,
the statistic is recomputed in full on each subsample (including the ridge
refit, whose penalty tracks the subsample size), and the limiting variance
is estimated by m times the bootstrap sample variance. Each replicate owns
a counter-derived random stream, so results do not depend on evaluation
order or thread count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri

from .bias_correction import PipelineConfig, estimate
from .dataset import Sample, compute_ranks, minmax_scale
from .errors import InputError
from .estimator import chatterjee_t
from .nn_graph import build_nn
from .rng import derive_rng

DEFAULT_B_REPS = 200


@dataclass(frozen=True)
class VarianceEstimate:
    """Bootstrap estimate of the limiting variance of a root-n statistic.

    ``sigma2_hat`` targets n * Var(statistic); the usable standard error is
    ``se = sqrt(sigma2_hat / n)`` for the original sample size n.
    """

    sigma2_hat: float
    se: float
    m: int
    b_reps: int
    seed: int

    def __post_init__(self):
        if not self.sigma2_hat >= 0.0:
            raise InputError(f"sigma2_hat must be nonnegative, got {self.sigma2_hat}")
        if not self.se >= 0.0:
            raise InputError(f"se must be nonnegative, got {self.se}")
        if self.m < 2:
            raise InputError(f"need m >= 2, got {self.m}")


def default_m(n: int) -> int:
    """Subsample size floor(sqrt(n))."""
    return int(math.isqrt(n))


def _t_hat_only(x: np.ndarray, y: np.ndarray, config: PipelineConfig) -> float:
    # Raw statistic without the ridge fit; must mirror the preprocessing in
    # bias_correction.estimate exactly so the two paths agree bit-for-bit.
    ranks = compute_ranks(y)
    xs = minmax_scale(x).xs if config.scale_covariates else x
    nn = build_nn(xs)
    return chatterjee_t(ranks, nn).value


def _resolve_m(n: int, m: int | None) -> int:
    m_eff = default_m(n) if m is None else int(m)
    if m_eff < 2:
        raise InputError(f"need subsample size m >= 2, got {m_eff}")
    if m_eff > n:
        raise InputError(f"subsample size {m_eff} exceeds sample size {n}")
    return m_eff


def _variance(stats: np.ndarray, m: int, n: int, b_reps: int, seed: int) -> VarianceEstimate:
    sigma2 = m * float(np.var(stats, ddof=1))
    sigma2 = max(sigma2, 0.0)
    return VarianceEstimate(
        sigma2_hat=sigma2,
        se=math.sqrt(sigma2 / n),
        m=m,
        b_reps=b_reps,
        seed=seed,
    )


def mn_bootstrap(
    sample: Sample,
    config: PipelineConfig,
    which: str,
    b_reps: int = DEFAULT_B_REPS,
    m: int | None = None,
    seed: int = 0,
    statistic=None,
) -> VarianceEstimate:
    """Bootstrap variance of the raw ("t_hat") or corrected ("t_bc") statistic.

    ``statistic`` may override the estimator with any callable
    ``(x, y, config) -> float``; the subsample draws depend only on
    ``(seed, replicate)``, never on which statistic is evaluated.
    """
    if which not in ("t_hat", "t_bc"):
        raise InputError(f"unknown statistic selector {which!r}; use 't_hat' or 't_bc'")
    if b_reps < 2:
        raise InputError(f"need b_reps >= 2, got {b_reps}")
    n = sample.n
    m_eff = _resolve_m(n, m)

    if statistic is None:
        if which == "t_hat":
            statistic = _t_hat_only
        else:
            statistic = lambda x, y, cfg: estimate(Sample(x=x, y=y), cfg).t_bc

    stats = np.empty(b_reps, dtype=np.float64)
    for r in range(b_reps):
        rng = derive_rng(seed, r)
        idx = rng.integers(0, n, size=m_eff)
        stats[r] = statistic(sample.x[idx], sample.y[idx], config)
    return _variance(stats, m_eff, n, b_reps, seed)


def mn_bootstrap_pair(
    sample: Sample,
    config: PipelineConfig,
    b_reps: int = DEFAULT_B_REPS,
    m: int | None = None,
    seed: int = 0,
) -> tuple[VarianceEstimate, VarianceEstimate]:
    """Variances of both statistics from one shared set of subsamples.

    Each replicate runs the full pipeline once and records both the raw and
    the corrected value. Because the draws depend only on (seed, replicate),
    the two results match what two separate :func:`mn_bootstrap` calls with
    the same seed would produce, at roughly half the cost.
    """
    if b_reps < 2:
        raise InputError(f"need b_reps >= 2, got {b_reps}")
    n = sample.n
    m_eff = _resolve_m(n, m)

    stats_t = np.empty(b_reps, dtype=np.float64)
    stats_bc = np.empty(b_reps, dtype=np.float64)
    for r in range(b_reps):
        rng = derive_rng(seed, r)
        idx = rng.integers(0, n, size=m_eff)
        res = estimate(Sample(x=sample.x[idx], y=sample.y[idx]), config)
        stats_t[r] = res.t_hat
        stats_bc[r] = res.t_bc
    return (
        _variance(stats_t, m_eff, n, b_reps, seed),
        _variance(stats_bc, m_eff, n, b_reps, seed),
    )


def confidence_interval(point: float, v: VarianceEstimate, alpha: float) -> tuple[float, float]:
    """Two-sided normal-approximation interval point +- z_{1-alpha/2} * se."""
    if not 0.0 < alpha < 1.0:
        raise InputError(f"alpha must lie strictly between 0 and 1, got {alpha}")
    z = float(ndtri(1.0 - alpha / 2.0))
    return (point - z * v.se, point + z * v.se)
