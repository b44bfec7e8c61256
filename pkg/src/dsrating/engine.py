"""Weighted SVD shared by every dual scaling / correspondence analysis variant.

For a non-negative table ``F`` with row sums ``r``, column sums ``c`` and
grand total ``s``::

    D_r^{-1/2} (F - r c^T / s) D_c^{-1/2} = U L V^T
    X = D_r^{-1/2} U_k      Y = D_c^{-1/2} V_k      (standard coordinates)
    G = X L_k               H = Y L_k               (principal coordinates)

The dominance-matrix route replaces the margins by fixed constants and skips
centering.
"""
import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateColumn, DegenerateRow, DegenerateSolution, InvalidInput, RankExceeded
from .matrix import as_matrix, scale_rows_cols, svd
from .recode import Kind, RecodedMatrix

RANK_TOL = 1e-10
DEFAULT_K = 2


class WeightMode(enum.Enum):
    MARGIN_DERIVED = "margin"
    FIXED_DIAGONAL = "fixed"


@dataclass(frozen=True)
class WeightModel:
    mode: WeightMode
    row_weights: np.ndarray
    col_weights: np.ndarray
    total: float

    @property
    def centered(self):
        return self.mode is WeightMode.MARGIN_DERIVED


def _labels(f):
    if isinstance(f, RecodedMatrix):
        return f.row_labels, f.col_labels
    n, p = np.shape(f)
    return tuple(f"row_{i + 1}" for i in range(n)), tuple(f"col_{j + 1}" for j in range(p))


def derive_weights(f) -> WeightModel:
    """Row sums, column sums and grand total of a non-negative table."""
    if isinstance(f, RecodedMatrix) and f.kind is Kind.DOMINANCE:
        raise InvalidInput("dominance matrices take fixed weights; use fixed_weights()")
    data = as_matrix(f.data if isinstance(f, RecodedMatrix) else f)
    if np.any(data < 0):
        raise InvalidInput("margin-derived weights need a non-negative table")
    rows, cols = _labels(f)
    r = data.sum(axis=1)
    c = data.sum(axis=0)
    zero_rows = np.flatnonzero(r <= 0)
    if zero_rows.size:
        raise DegenerateRow([rows[i] for i in zero_rows], zero_rows)
    zero_cols = np.flatnonzero(c <= 0)
    if zero_cols.size:
        raise DegenerateColumn([cols[j] for j in zero_cols], zero_cols)
    return WeightModel(WeightMode.MARGIN_DERIVED, r, c, float(data.sum()))


def fixed_weights(n, p) -> WeightModel:
    """Constant weights ``p(p-1)`` per row and ``n(p-1)`` per column."""
    rw = np.full(n, float(p * (p - 1)))
    cw = np.full(p, float(n * (p - 1)))
    return WeightModel(WeightMode.FIXED_DIAGONAL, rw, cw, float(n * p * (p - 1)))


@dataclass(frozen=True)
class ScalingSolution:
    singular_values: np.ndarray
    row_standard: np.ndarray
    col_standard: np.ndarray
    row_principal: np.ndarray
    col_principal: np.ndarray
    explained: np.ndarray
    cumulative_explained: np.ndarray
    k: int
    weights: WeightModel
    row_labels: tuple
    col_labels: tuple
    provenance: dict = field(default_factory=dict)

    @property
    def rank(self):
        return self.singular_values.size


def numerical_rank(singular_values):
    sv = np.asarray(singular_values)
    if sv.size == 0:
        return 0
    tol = RANK_TOL * max(float(sv.max()), 1.0)
    return int(np.count_nonzero(sv > tol))


def centered_table(f, weights: WeightModel):
    """``F - r c^T / s`` for margin weights, ``F`` itself otherwise."""
    data = as_matrix(f.data if isinstance(f, RecodedMatrix) else f)
    if weights.centered:
        return data - np.outer(weights.row_weights, weights.col_weights) / weights.total
    return data


def solve(f, weights: WeightModel = None, k: int = DEFAULT_K, use_numba=None) -> ScalingSolution:
    """Decompose ``f`` under ``weights`` and keep ``k`` dimensions."""
    if weights is None:
        weights = derive_weights(f)
    data = as_matrix(f.data if isinstance(f, RecodedMatrix) else f)
    if weights.row_weights.shape != (data.shape[0],) or weights.col_weights.shape != (data.shape[1],):
        raise InvalidInput("weight vectors do not match the table")
    if int(k) != k or k < 1:
        raise InvalidInput(f"dimensionality must be a positive integer, got {k}")
    k = int(k)
    rows, cols = _labels(f)
    scaled = scale_rows_cols(centered_table(data, weights), weights.row_weights, weights.col_weights)
    dec = svd(scaled, use_numba=use_numba)
    rank = numerical_rank(dec.singular_values)
    if rank == 0:
        raise DegenerateSolution(k)
    if k > rank:
        raise RankExceeded(k, rank)
    sv = dec.singular_values[:rank]
    lam = sv[:k]
    x = dec.left_vectors[:, :k] / np.sqrt(weights.row_weights)[:, None]
    y = dec.right_vectors[:, :k] / np.sqrt(weights.col_weights)[:, None]
    explained, cumulative = _proportions(sv)
    return ScalingSolution(
        singular_values=sv,
        row_standard=x,
        col_standard=y,
        row_principal=x * lam,
        col_principal=y * lam,
        explained=explained,
        cumulative_explained=cumulative,
        k=k,
        weights=weights,
        row_labels=tuple(rows),
        col_labels=tuple(cols),
    )


def _proportions(sv):
    sq = np.asarray(sv, dtype=np.float64) ** 2
    sq = sq[np.arange(sq.size) < numerical_rank(sv)]
    if sq.size == 0 or sq.sum() == 0:
        raise DegenerateSolution()
    share = sq / sq.sum()
    return share, np.cumsum(share)


def explained_variance(sol_or_values):
    """Squared-singular-value shares and their running sums.

    Accepts a :class:`ScalingSolution` or a sequence of singular values.
    """
    sv = sol_or_values.singular_values if isinstance(sol_or_values, ScalingSolution) else sol_or_values
    return _proportions(sv)


def transition_rows(f, sol: ScalingSolution):
    """Row principal coordinates recomputed as ``D_r^{-1} F_centered Y``."""
    return centered_table(f, sol.weights) @ sol.col_standard / sol.weights.row_weights[:, None]
