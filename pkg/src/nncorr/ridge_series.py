"""Polynomial-basis ridge least squares for conditional survival estimation.

For every threshold t in the observed responses, the indicator 1(Y >= t) is
projected onto a total-degree power basis with an L2 penalty. The shifted
Gram matrix does not depend on t, so one Cholesky factorization serves all
n right-hand sides: O(K^3) once plus O(n K^2) for the solves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .dataset import ScaledMatrix, _as_matrix, _as_vector
from .errors import BasisSizeError, DimensionMismatchError, FactorizationError, InputError

DEFAULT_BASIS_CAP = 10_000


@dataclass(frozen=True)
class BasisSpec:
    """Multi-index set of a total-degree power basis.

    ``exponents`` is a (K, d) integer array in graded-lexicographic order:
    sorted by total degree, then lexicographically, with the constant term
    first. K = C(d + degree, degree).
    """

    d: int
    degree: int
    exponents: np.ndarray

    @property
    def size(self) -> int:
        return self.exponents.shape[0]


@dataclass(frozen=True)
class RidgeModel:
    """Fitted ridge system shared across all response thresholds.

    ``factor`` is the Cholesky factorization of P'P + n*lam*I (positive
    definite for any lam > 0). Column j of ``betas`` solves the system for
    threshold t = y_j.
    """

    basis: BasisSpec | None
    p: np.ndarray
    y: np.ndarray
    lam: float
    factor: tuple
    betas: np.ndarray


@dataclass(frozen=True)
class GhatMatrix:
    """Estimated conditional survival probabilities on the sample grid.

    ``g[i, j]`` estimates P(Y >= y_j | X = x_i). This is a linear
    probability model, so entries may fall outside [0, 1]; nothing is
    clamped here.
    """

    g: np.ndarray


def _compositions(total: int, parts: int):
    # All nonnegative integer vectors of given length summing to total,
    # in ascending lexicographic order.
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in _compositions(total - head, parts - 1):
            yield (head, *tail)


def basis_index_set(d: int, degree: int, cap: int = DEFAULT_BASIS_CAP) -> BasisSpec:
    """Multi-indices of all monomials with total degree up to ``degree``."""
    if d < 1:
        raise InputError(f"need d >= 1, got {d}")
    if degree < 0:
        raise InputError(f"need degree >= 0, got {degree}")
    k = math.comb(d + degree, degree)
    if k > cap:
        raise BasisSizeError(
            f"basis would have {k} functions, above the cap of {cap}; lower the degree"
        )
    exps = []
    for total in range(degree + 1):
        exps.extend(_compositions(total, d))
    exponents = np.asarray(exps, dtype=np.int64)
    assert exponents.shape == (k, d)
    return BasisSpec(d=d, degree=degree, exponents=exponents)


def design_matrix(xs: ScaledMatrix | np.ndarray, basis: BasisSpec) -> np.ndarray:
    """Evaluate every basis monomial at every row: entry (i, k) = xs_i^alpha_k.

    The 0^0 = 1 convention applies, so the constant column is all ones even
    at the origin.
    """
    arr = _as_matrix(xs.xs if isinstance(xs, ScaledMatrix) else xs)
    if arr.shape[1] != basis.d:
        raise DimensionMismatchError(
            f"matrix has {arr.shape[1]} columns but basis expects {basis.d}"
        )
    n = arr.shape[0]
    k = basis.size
    # One power table per covariate, then gather-and-multiply per monomial;
    # much cheaper than broadcasting x ** E over an (n, K, d) block.
    p = np.ones((n, k), dtype=np.float64)
    for m in range(basis.d):
        col_powers = arr[:, m, None] ** np.arange(basis.degree + 1)
        p *= col_powers[:, basis.exponents[:, m]]
    return p


def ridge_fit_all(p, y, lam: float, basis: BasisSpec | None = None) -> RidgeModel:
    """Solve the penalized projection for every threshold t = y_j at once.

    Builds P'P + n*lam*I, factorizes it once, and solves against the
    indicator responses 1(y >= y_j) for all j. The right-hand sides are
    assembled from suffix sums of the rows of P in response order, which
    costs O(nK) instead of forming the n x n indicator matrix.
    """
    pmat = _as_matrix(p, name="design matrix")
    yvec = _as_vector(y)
    n, k = pmat.shape
    if yvec.shape[0] != n:
        raise DimensionMismatchError(f"design has {n} rows but y has {yvec.shape[0]}")
    if not lam > 0.0:
        raise InputError(f"ridge parameter must be positive, got {lam}")

    gram = pmat.T @ pmat
    gram[np.diag_indices_from(gram)] += n * lam
    try:
        factor = scipy.linalg.cho_factor(gram, lower=False)
    except scipy.linalg.LinAlgError as exc:  # pragma: no cover - guarded by validation
        raise FactorizationError(f"Cholesky factorization failed: {exc}") from exc

    order = np.argsort(yvec, kind="stable")
    p_sorted = pmat[order]
    y_sorted = yvec[order]
    # suffix[q] = sum of p_sorted rows q..n-1 = P' 1(y >= y_sorted[q]).
    suffix = np.cumsum(p_sorted[::-1], axis=0)[::-1]
    pos = np.searchsorted(y_sorted, yvec, side="left")
    rhs = suffix[pos].T
    betas = scipy.linalg.cho_solve(factor, rhs)
    return RidgeModel(basis=basis, p=pmat, y=yvec, lam=float(lam), factor=factor, betas=betas)


def ghat_matrix(model: RidgeModel) -> GhatMatrix:
    """Dense n x n evaluation g = P @ betas of the fitted survival model."""
    return GhatMatrix(g=model.p @ model.betas)
