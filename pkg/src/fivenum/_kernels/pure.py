"""Pure NumPy implementations of the Monte Carlo hot kernels.

These mirror the compiled kernels in ``fivenum._fast`` operation for
operation; whichever backend is active, the simulator sees the same
interface and (up to last-ulp libm differences) the same numbers.
"""

from __future__ import annotations

import numpy as np

from .. import normal

BACKEND = "pure"


def quantile_transform(u: np.ndarray) -> np.ndarray:
    """Map uniforms in (0,1) to standard normal variates (inverse CDF)."""
    return normal._quantile_array(np.ascontiguousarray(u, dtype=float))


def block_summaries(x: np.ndarray, q: int) -> np.ndarray:
    """Five-number summary plus sample SD for each row of a sample block.

    Parameters
    ----------
    x : ndarray, shape (rows, n) with n = 4q+1
        One sample per row.
    q : int
        Quartile spacing; the extracted ranks are 1, q+1, 2q+1, 3q+1, n.

    Returns
    -------
    ndarray, shape (rows, 6)
        Columns: minimum, q1, median, q3, maximum, sample SD
        (divisor n-1).
    """
    x = np.ascontiguousarray(x, dtype=float)
    rows, n = x.shape
    if n != 4 * q + 1:
        raise ValueError(f"row length {n} does not match 4*q+1 for q={q}")
    out = np.empty((rows, 6))
    mean = x.mean(axis=1)
    out[:, 5] = np.sqrt(((x - mean[:, None]) ** 2).sum(axis=1) / (n - 1))
    ranks = (0, q, 2 * q, 3 * q, n - 1)
    part = np.partition(x, ranks, axis=1)
    for col, r in enumerate(ranks):
        out[:, col] = part[:, r]
    return out
