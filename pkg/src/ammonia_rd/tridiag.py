"""Thomas algorithm for (batches of) tridiagonal systems."""
from __future__ import annotations

import numpy as np

from .errors import ZeroPivot


def thomas_solve(lower, diag, upper, rhs):
    """Solve ``T x = rhs`` for tridiagonal ``T`` by forward elimination.

    All four arrays share the shape ``(..., n)``; leading axes index
    independent systems solved together.  ``lower[..., i]`` multiplies
    ``x[..., i-1]`` (so ``lower[..., 0]`` is ignored) and ``upper[..., i]``
    multiplies ``x[..., i+1]`` (``upper[..., -1]`` is ignored).  No pivoting:
    intended for the diagonally dominant matrices of implicit sweeps.

    Raises
    ------
    ZeroPivot
        If an elimination pivot is exactly zero or not finite.
    """
    a, b, c, d = np.broadcast_arrays(*(np.asarray(v, dtype=float)
                                       for v in (lower, diag, upper, rhs)))
    n = d.shape[-1]
    # put the system index first so each elimination step touches contiguous memory
    a, b, c, d = (np.ascontiguousarray(np.moveaxis(v, -1, 0)) for v in (a, b, c, d))
    cp = np.empty_like(d)
    dp = np.empty_like(d)

    piv = b[0]
    _check(piv, 0)
    cp[0] = c[0] / piv
    dp[0] = d[0] / piv
    for i in range(1, n):
        piv = b[i] - a[i] * cp[i - 1]
        _check(piv, i)
        cp[i] = c[i] / piv
        dp[i] = (d[i] - a[i] * dp[i - 1]) / piv

    x = dp
    for i in range(n - 2, -1, -1):
        x[i] -= cp[i] * x[i + 1]
    return np.moveaxis(x, 0, -1)


def _check(piv, i):
    if not np.all(np.isfinite(piv)) or np.any(piv == 0):
        raise ZeroPivot(f"zero or non-finite pivot in row {i}")


def tridiag_matmul(lower, diag, upper, x):
    """``T @ x`` for the same storage convention (test helper)."""
    x = np.asarray(x, dtype=float)
    out = diag * x
    out[..., 1:] += lower[..., 1:] * x[..., :-1]
    out[..., :-1] += upper[..., :-1] * x[..., 1:]
    return out
