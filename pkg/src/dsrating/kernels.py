"""Hot numeric kernels.

Each kernel exists twice: an explicit-loop version compiled with numba's
``@njit`` and a vectorised pure-numpy version. ``USE_NUMBA`` picks which one
the public wrappers call. Set ``DSRATING_DISABLE_NUMBA=1`` to force the numpy
path (numba is also skipped when it is not installed).
"""
import math
import os

import numpy as np

try:
    if os.environ.get("DSRATING_DISABLE_NUMBA", "").strip() not in ("", "0"):
        raise ImportError("disabled by DSRATING_DISABLE_NUMBA")
    import numba
    HAS_NUMBA = True
except ImportError:
    numba = None
    HAS_NUMBA = False

USE_NUMBA = HAS_NUMBA

# Jacobi stops rotating a column pair once its cosine drops below this.
JACOBI_TOL = 1e-15
JACOBI_MAX_SWEEPS = 80


def _jit(func):
    if HAS_NUMBA:
        return numba.njit(cache=True)(func)
    return None


# ---------------------------------------------------------------------------
# one-sided Jacobi SVD
# ---------------------------------------------------------------------------

def _jacobi_loops(a, tol, max_sweeps):
    """Cyclic one-sided Jacobi on the columns of ``a`` (rows >= cols).

    Returns the rotated columns (singular values are their norms), the
    accumulated right rotation and the number of sweeps performed.
    """
    m, n = a.shape
    u = a.copy()
    v = np.eye(n)
    sweeps = 0
    for sweep in range(max_sweeps):
        sweeps = sweep + 1
        rotated = False
        for i in range(n - 1):
            for j in range(i + 1, n):
                alpha = 0.0
                beta = 0.0
                gamma = 0.0
                for k in range(m):
                    alpha += u[k, i] * u[k, i]
                    beta += u[k, j] * u[k, j]
                    gamma += u[k, i] * u[k, j]
                if gamma == 0.0 or abs(gamma) <= tol * np.sqrt(alpha * beta):
                    continue
                rotated = True
                zeta = (beta - alpha) / (2.0 * gamma)
                sgn = 1.0 if zeta >= 0.0 else -1.0
                t = sgn / (abs(zeta) + math.hypot(1.0, zeta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = c * t
                for k in range(m):
                    ui = u[k, i]
                    uj = u[k, j]
                    u[k, i] = c * ui - s * uj
                    u[k, j] = s * ui + c * uj
                for k in range(n):
                    vi = v[k, i]
                    vj = v[k, j]
                    v[k, i] = c * vi - s * vj
                    v[k, j] = s * vi + c * vj
        if not rotated:
            break
    return u, v, sweeps


_jacobi_numba = _jit(_jacobi_loops)


def _round_robin(n):
    # chess-tournament schedule: n-1 rounds of n/2 disjoint pairs
    players = list(range(n)) + ([-1] if n % 2 else [])
    size = len(players)
    rounds = []
    for _ in range(size - 1):
        pairs = [(players[i], players[size - 1 - i]) for i in range(size // 2)]
        pairs = [(min(p), max(p)) for p in pairs if -1 not in p]
        if pairs:
            rounds.append((np.array([p[0] for p in pairs], dtype=np.intp),
                           np.array([p[1] for p in pairs], dtype=np.intp)))
        players = [players[0]] + [players[-1]] + players[1:-1]
    return rounds


def _jacobi_numpy(a, tol, max_sweeps):
    """Round-robin one-sided Jacobi; every round rotates disjoint pairs at once."""
    m, n = a.shape
    u = a.copy()
    v = np.eye(n)
    rounds = _round_robin(n)
    sweeps = 0
    for sweep in range(max_sweeps):
        sweeps = sweep + 1
        rotated = False
        for left, right in rounds:
            ui, uj = u[:, left], u[:, right]
            alpha = np.einsum("ij,ij->j", ui, ui)
            beta = np.einsum("ij,ij->j", uj, uj)
            gamma = np.einsum("ij,ij->j", ui, uj)
            active = (gamma != 0.0) & (np.abs(gamma) > tol * np.sqrt(alpha * beta))
            if not active.any():
                continue
            rotated = True
            left, right = left[active], right[active]
            alpha, beta, gamma = alpha[active], beta[active], gamma[active]
            # near-orthogonal pairs overflow zeta; t then correctly rounds to 0
            with np.errstate(over="ignore"):
                zeta = (beta - alpha) / (2.0 * gamma)
                sgn = np.where(zeta >= 0.0, 1.0, -1.0)
                t = sgn / (np.abs(zeta) + np.hypot(1.0, zeta))
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = c * t
            for mat in (u, v):
                xi = mat[:, left].copy()
                xj = mat[:, right]
                mat[:, left] = c * xi - s * xj
                mat[:, right] = s * xi + c * xj
        if not rotated:
            break
    return u, v, sweeps


def jacobi_rotate(a, use_numba=None):
    """Orthogonalise the columns of ``a`` (float64, rows >= cols).

    Returns ``(u, v, sweeps)`` with ``a @ v == u`` and the columns of ``u``
    mutually orthogonal to ``JACOBI_TOL`` relative precision.
    """
    a = np.ascontiguousarray(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] < a.shape[1]:
        raise ValueError("jacobi_rotate expects a 2-D array with rows >= cols")
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba:
        if not HAS_NUMBA:
            raise RuntimeError("numba is not available")
        return _jacobi_numba(a, JACOBI_TOL, JACOBI_MAX_SWEEPS)
    return _jacobi_numpy(a, JACOBI_TOL, JACOBI_MAX_SWEEPS)


# ---------------------------------------------------------------------------
# row-wise midranks
# ---------------------------------------------------------------------------

def _midrank_loops(x):
    n, p = x.shape
    out = np.empty((n, p))
    for i in range(n):
        for j in range(p):
            less = 0
            equal = 0
            for l in range(p):
                if x[i, l] < x[i, j]:
                    less += 1
                elif x[i, l] == x[i, j]:
                    equal += 1
            out[i, j] = less + (equal + 1) / 2.0
    return out


_midrank_numba = _jit(_midrank_loops)


def _midrank_numpy(x):
    less = (x[:, None, :] < x[:, :, None]).sum(axis=2)
    equal = (x[:, None, :] == x[:, :, None]).sum(axis=2)
    return less + (equal + 1) / 2.0


def midrank_rows(x, use_numba=None):
    """1-based ascending ranks within each row; ties share the average rank."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    if x.ndim != 2:
        raise ValueError("midrank_rows expects a 2-D array")
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba:
        if not HAS_NUMBA:
            raise RuntimeError("numba is not available")
        return _midrank_numba(x)
    return _midrank_numpy(x)
