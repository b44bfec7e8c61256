"""Dense matrix helpers and a deterministic thin SVD.

Matrices are plain 2-D float64 numpy arrays. The SVD is computed with the
one-sided Jacobi kernel from :mod:`dsrating.kernels`, so it does not depend on
the LAPACK build, and a sign convention is applied afterwards: within every
singular pair the left vector's largest-magnitude entry is positive (first
index wins ties).
"""
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DegenerateWeight, InvalidInput

# Columns whose norm falls below this fraction of the largest one are
# replaced by a deterministic orthonormal completion.
_NULL_REL = 1e-12


def as_matrix(m, name="matrix"):
    """Validate ``m`` as a finite 2-D array with at least one row and column."""
    arr = np.array(m, dtype=np.float64)
    if arr.ndim != 2:
        raise InvalidInput(f"{name} must be 2-D, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise InvalidInput(f"{name} must have at least one row and one column")
    bad = np.argwhere(~np.isfinite(arr))
    if bad.size:
        i, j = bad[0]
        raise InvalidInput(f"{name} has non-finite entry {arr[i, j]!r} at cell ({i}, {j})")
    return arr


@dataclass(frozen=True)
class SvdResult:
    singular_values: np.ndarray
    left_vectors: np.ndarray
    right_vectors: np.ndarray

    def reconstruct(self):
        return (self.left_vectors * self.singular_values) @ self.right_vectors.T


def _complete_columns(u, keep):
    """Fill the columns of ``u`` not flagged in ``keep`` with unit vectors
    orthogonal to everything before them (Gram-Schmidt on e_0, e_1, ...)."""
    m, r = u.shape
    basis = [u[:, j] for j in range(r) if keep[j]]
    out = u.copy()
    candidate = 0
    for j in range(r):
        if keep[j]:
            continue
        while True:
            e = np.zeros(m)
            e[candidate] = 1.0
            candidate += 1
            for _ in range(2):
                for b in basis:
                    e -= (b @ e) * b
            norm = np.linalg.norm(e)
            if norm > 1e-8:
                e /= norm
                break
        out[:, j] = e
        basis.append(e)
    return out


def apply_sign_convention(u, v):
    """Flip pairs so each left column's largest-|.| entry is positive."""
    u = u.copy()
    v = v.copy()
    for j in range(u.shape[1]):
        idx = int(np.argmax(np.abs(u[:, j])))
        if u[idx, j] < 0:
            u[:, j] = -u[:, j]
            v[:, j] = -v[:, j]
    return u, v


def svd(m, use_numba=None):
    """Thin SVD with ``min(rows, cols)`` singular values in non-increasing order."""
    a = as_matrix(m)
    transposed = a.shape[0] < a.shape[1]
    if transposed:
        a = a.T
    # squared column norms under/overflow for extreme magnitudes
    amax = float(np.abs(a).max())
    scale = amax if amax > 0 else 1.0
    work, v, _ = kernels.jacobi_rotate(a / scale, use_numba=use_numba)
    sv = np.sqrt(np.einsum("ij,ij->j", work, work))
    # stable sort keeps the routine's order among exact ties
    order = np.argsort(-sv, kind="stable")
    sv = sv[order]
    work = work[:, order]
    v = v[:, order]
    top = sv[0] if sv.size else 0.0
    keep = sv > max(top * _NULL_REL, np.finfo(float).tiny)
    u = np.zeros_like(work)
    u[:, keep] = work[:, keep] / sv[keep]
    if not keep.all():
        u = _complete_columns(u, keep)
    sv = sv * scale
    if transposed:
        u, v = v, u
    u, v = apply_sign_convention(u, v)
    return SvdResult(sv, u, v)


def scale_rows_cols(m, row_weights, col_weights):
    """Return ``m[i, j] / sqrt(row_weights[i] * col_weights[j])``."""
    a = as_matrix(m)
    rw = np.asarray(row_weights, dtype=np.float64)
    cw = np.asarray(col_weights, dtype=np.float64)
    if rw.shape != (a.shape[0],) or cw.shape != (a.shape[1],):
        raise InvalidInput(
            f"weight lengths {rw.shape}, {cw.shape} do not match matrix shape {a.shape}")
    for name, w in (("row", rw), ("column", cw)):
        bad = np.flatnonzero(~(w > 0))
        if bad.size:
            raise DegenerateWeight(f"{name} weight {w[bad[0]]!r} at index {bad[0]} is not positive")
    return a / np.sqrt(np.outer(rw, cw))
