"""Dense primal simplex for equality-form LPs min c.x, A x = b, x >= 0.

Built for the hypercube-vertex convex-combination LPs in this package: few
rows (coordinate marginals plus a convexity row), up to 2^16 columns.  Uses
Bland's anti-cycling rule throughout and a 1e-9 feasibility/optimality
tolerance.  The pivot loop is JIT-compiled when numba is available and runs
as plain Python otherwise (same code, much slower).
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import InvariantViolationError

TOLERANCE = 1e-9

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba installed
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(f):
            return f

        return wrap


@lru_cache(maxsize=None)
def bit_matrix(k: int) -> np.ndarray:
    """(2^k, k) float matrix; row m holds the bits of mask m (bit p in column p)."""
    masks = np.arange(1 << k, dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(k, dtype=np.int64)[None, :]) & 1).astype(np.float64)
    bits.setflags(write=False)
    return bits


@lru_cache(maxsize=None)
def sign_matrix(k: int) -> np.ndarray:
    """(2^k, k) float matrix of +/-1 rows; bit 0 -> +1, bit 1 -> -1."""
    signs = 1.0 - 2.0 * bit_matrix(k)
    signs.setflags(write=False)
    return signs


@njit(cache=True)
def _pivot_loop(tab, basis, tol, max_iter):
    """Run Bland-rule simplex pivots on an extended tableau in place.

    tab is (m+1, ncols+1): rows 0..m-1 the constraint rows (identity on the
    basis columns), row m the reduced costs, last column the rhs.  Returns the
    iteration count on optimality, -1 on the iteration cap, -2 if no pivot row
    exists (unbounded; impossible for these bounded LPs).
    """
    m = tab.shape[0] - 1
    ncols = tab.shape[1] - 1
    for it in range(max_iter):
        enter = -1
        for j in range(ncols):
            if tab[m, j] < -tol:  # Bland: smallest improving index
                enter = j
                break
        if enter == -1:
            return it
        leave = -1
        best = 0.0
        best_var = 0
        for i in range(m):
            d = tab[i, enter]
            if d > tol:
                r = tab[i, ncols] / d
                if leave == -1 or r < best - 1e-12 or (
                    abs(r - best) <= 1e-12 and basis[i] < best_var
                ):
                    leave = i
                    best = r
                    best_var = basis[i]
        if leave == -1:
            return -2
        piv = tab[leave, enter]
        for j in range(ncols + 1):
            tab[leave, j] /= piv
        for i in range(m + 1):
            if i != leave:
                f = tab[i, enter]
                if f != 0.0:
                    for j in range(ncols + 1):
                        tab[i, j] -= f * tab[leave, j]
        basis[leave] = enter
    return -1


def solve_min(
    a_mat: np.ndarray, b_vec: np.ndarray, c_vec: np.ndarray, basis: np.ndarray
) -> tuple[float, np.ndarray]:
    """Minimize c.x subject to A x = b, x >= 0, from a given basic feasible start.

    basis lists the column indices of a feasible basis (nonsingular, basic
    solution >= 0).  Returns (optimal objective value, optimal solution).
    """
    m, ncols = a_mat.shape
    basis = np.array(basis, dtype=np.int64)  # private copy; the pivot loop mutates it
    bmat = a_mat[:, basis]
    try:
        reduced = np.linalg.solve(bmat, np.column_stack([a_mat, b_vec]))
    except np.linalg.LinAlgError as exc:
        raise InvariantViolationError(f"singular starting basis: {exc}") from None
    tab = np.empty((m + 1, ncols + 1))
    tab[:m] = reduced
    cb = c_vec[basis]
    tab[m, :ncols] = c_vec - cb @ reduced[:, :ncols]
    tab[m, ncols] = -float(cb @ reduced[:, ncols])
    if np.any(tab[:m, ncols] < -TOLERANCE):
        raise InvariantViolationError("starting basis is not primal feasible")
    max_iter = 50 * (ncols + m) + 1000
    status = _pivot_loop(tab, basis, TOLERANCE, max_iter)
    if status == -1:
        raise InvariantViolationError("simplex iteration cap reached")
    if status == -2:
        raise InvariantViolationError("simplex reported an unbounded direction on a bounded LP")
    # Recompute the objective from the final basic solution to shed pivot drift.
    solution = np.zeros(ncols)
    solution[basis] = tab[:m, ncols]
    return float(c_vec[basis] @ tab[:m, ncols]), solution
