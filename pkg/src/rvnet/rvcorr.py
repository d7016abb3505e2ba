"""rvnet.rvcorr

Escoufier's RV coefficient between two multivariate return matrices and the
distance derived from it.

    RV(X, Y) = tr(S_XY S_YX) / sqrt(tr(S_XX^2) tr(S_YY^2))
    d(X, Y)  = sqrt(2 (1 - RV(X, Y)))

The pipeline uses bivariate (bid, ask) matrices, but every function here
accepts m x p and m x q inputs so the univariate reduction (RV = Pearson r^2)
can be checked directly.

Covariance blocks use column-centered data with divisor m - 1 unless ddof=0
is asked for; the divisor cancels in RV.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Sequence, Tuple, Union

import numpy as np

from .errors import (
    DegenerateVariance,
    InsufficientOverlap,
    OutOfRange,
    RowCountMismatch,
    RvBoundViolation,
    TooFewRows,
)
from .types import CrossCovariance, ReturnMatrix, SimilarityMatrix

logger = logging.getLogger("rvnet")

MatrixLike = Union[np.ndarray, Sequence[Sequence[float]], Sequence[float], ReturnMatrix]

# RV values in (1, 1 + RV_CLAMP_TOL] are rounding noise and clamp to 1.
RV_CLAMP_TOL = 1e-12

# A covariance block is degenerate when its total variance is below this
# fraction of the squared data scale (constant columns leave centered
# residues of order machine epsilon).
DEGENERATE_RTOL = 1e-20


# ================================
# Helpers
# ================================

def _as_matrix(a: MatrixLike) -> np.ndarray:
    if isinstance(a, ReturnMatrix):
        return a.rows
    arr = np.asarray(a, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise OutOfRange(f"expected a 2-D data matrix, got shape {arr.shape}")
    return arr


def _centered(a: np.ndarray) -> np.ndarray:
    return a - a.mean(axis=0)


def _is_degenerate(block: np.ndarray, data: np.ndarray) -> bool:
    scale = float(np.max(np.abs(data))) if data.size else 0.0
    if scale == 0.0:
        return True
    return float(np.trace(block)) <= DEGENERATE_RTOL * scale * scale


# ================================
# Covariance and RV
# ================================

def cross_covariance(X: MatrixLike, Y: MatrixLike, *, ddof: int = 1) -> CrossCovariance:
    """Covariance blocks S_XX, S_YY, S_XY of two matrices observed on the same rows."""
    x, y = _as_matrix(X), _as_matrix(Y)
    if x.shape[0] != y.shape[0]:
        raise RowCountMismatch(f"row counts differ: {x.shape[0]} vs {y.shape[0]}")
    m = x.shape[0]
    if m < 2:
        raise TooFewRows(f"need at least 2 rows, got {m}")
    if ddof not in (0, 1):
        raise OutOfRange(f"ddof must be 0 or 1, got {ddof}")

    xc, yc = _centered(x), _centered(y)
    divisor = float(m - ddof)
    return CrossCovariance(
        s_xx=(xc.T @ xc) / divisor,
        s_yy=(yc.T @ yc) / divisor,
        s_xy=(xc.T @ yc) / divisor,
    )


def rv_coefficient(X: MatrixLike, Y: MatrixLike, *, ddof: int = 1) -> float:
    """Escoufier's RV coefficient, in [0, 1]."""
    x, y = _as_matrix(X), _as_matrix(Y)
    cov = cross_covariance(x, y, ddof=ddof)
    if _is_degenerate(cov.s_xx, x):
        raise DegenerateVariance("first matrix has zero covariance trace")
    if _is_degenerate(cov.s_yy, y):
        raise DegenerateVariance("second matrix has zero covariance trace")

    # tr(S_XY S_YX) is the squared Frobenius norm of S_XY; tr(S^2) likewise
    # for the symmetric blocks.
    num = float(np.sum(cov.s_xy * cov.s_xy))
    den = math.sqrt(float(np.sum(cov.s_xx * cov.s_xx)) * float(np.sum(cov.s_yy * cov.s_yy)))
    rv = num / den
    if rv > 1.0 + RV_CLAMP_TOL:
        raise RvBoundViolation(f"RV = {rv!r} exceeds 1 beyond rounding tolerance")
    return min(rv, 1.0)


def rv_univariate_check(x: Sequence[float], y: Sequence[float]) -> float:
    """RV on two single-column matrices; equals the squared Pearson correlation."""
    xs = np.asarray(x, dtype=np.float64).reshape(-1, 1)
    ys = np.asarray(y, dtype=np.float64).reshape(-1, 1)
    return rv_coefficient(xs, ys)


def rv_distance(rv: float) -> float:
    """sqrt(2 (1 - rv)); 0 for identical configurations, sqrt(2) for RV = 0."""
    if not (math.isfinite(rv) and 0.0 <= rv <= 1.0):
        raise OutOfRange(f"RV must lie in [0, 1], got {rv!r}")
    return math.sqrt(2.0 * (1.0 - rv))


def configuration_distance(X: MatrixLike, Y: MatrixLike) -> float:
    """Frobenius distance between the normalized configuration matrices.

    With W = Xc Xc^T (row cross-products of the centered data), returns
    || W_X / ||W_X|| - W_Y / ||W_Y|| ||. This equals rv_distance(rv_coefficient(X, Y))
    and is a Euclidean distance between unit vectors, hence the triangle
    inequality. Diagnostic only: it costs O(m^2) memory.
    """
    x, y = _as_matrix(X), _as_matrix(Y)
    if x.shape[0] != y.shape[0]:
        raise RowCountMismatch(f"row counts differ: {x.shape[0]} vs {y.shape[0]}")
    wx = _centered(x) @ _centered(x).T
    wy = _centered(y) @ _centered(y).T
    nx, ny = float(np.linalg.norm(wx)), float(np.linalg.norm(wy))
    if nx == 0.0 or ny == 0.0:
        raise DegenerateVariance("configuration matrix is zero")
    return float(np.linalg.norm(wx / nx - wy / ny))


# ================================
# Similarity matrix
# ================================

def _pair_rv(args: Tuple[np.ndarray, np.ndarray]) -> float:
    return rv_coefficient(args[0], args[1])


def similarity_from_rv(assets: Sequence[str], rv: np.ndarray) -> SimilarityMatrix:
    """Wrap a symmetric RV matrix, deriving distances cell by cell."""
    rv = np.array(rv, dtype=np.float64)
    n = len(assets)
    if rv.shape != (n, n):
        raise OutOfRange(f"RV matrix shape {rv.shape} does not match {n} assets")
    dist = np.zeros((n, n), dtype=np.float64)
    for i in range(n):
        for j in range(i + 1, n):
            dist[i, j] = dist[j, i] = rv_distance(float(rv[i, j]))
    np.fill_diagonal(rv, 1.0)
    return SimilarityMatrix(assets=tuple(assets), rv=rv, dist=dist)


def build_similarity_matrix(
    returns: Sequence[ReturnMatrix],
    *,
    max_workers: int = 1,
) -> SimilarityMatrix:
    """Pairwise RV coefficients and distances for N >= 2 assets.

    Each pair is evaluated in isolation, so `max_workers` changes only the
    schedule, never the result.
    """
    returns = list(returns)
    n = len(returns)
    if n < 2:
        raise InsufficientOverlap(f"need at least 2 assets, got {n}")

    m = returns[0].shape[0]
    for r in returns:
        if r.shape[0] != m:
            raise RowCountMismatch(
                f"asset {r.asset_code} has {r.shape[0]} return rows, expected {m}"
            )
        if m < 2:
            raise TooFewRows(f"asset {r.asset_code} has {m} return rows; need >= 2")
        cov = cross_covariance(r.rows, r.rows)
        if _is_degenerate(cov.s_xx, r.rows):
            raise DegenerateVariance(
                f"asset {r.asset_code} has zero return variance", asset_code=r.asset_code,
            )

    pairs: List[Tuple[int, int]] = [(i, j) for i in range(n) for j in range(i + 1, n)]
    work = [(returns[i].rows, returns[j].rows) for i, j in pairs]
    if max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            values = list(pool.map(_pair_rv, work))
    else:
        values = [_pair_rv(w) for w in work]

    rv = np.eye(n, dtype=np.float64)
    for (i, j), value in zip(pairs, values):
        rv[i, j] = rv[j, i] = value

    logger.debug("built %dx%d RV matrix over %d return rows", n, n, m)
    return similarity_from_rv([r.asset_code for r in returns], rv)
