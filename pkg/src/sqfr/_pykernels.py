"""Pure-numpy implementations of the per-sample kernels.

Signatures mirror sqfr._ckernels; sqfr.kernels selects between the two at
import time. These are the loops whose cost scales with the number of
samples rather than the number of groups.
"""

from __future__ import annotations

import numpy as np

_SQRT_TWO_PI = np.sqrt(2.0 * np.pi)


def count_below(sorted_scores: np.ndarray, thresholds: np.ndarray) -> np.ndarray:
    """Number of scores strictly below each threshold.

    ``sorted_scores`` must be ascending; ``thresholds`` ascending as well.
    """
    return np.searchsorted(sorted_scores, thresholds, side="left").astype(np.int64)


def low_weight_sums(scores: np.ndarray, lo: float, hi: float) -> tuple[float, float]:
    """Sum of weights and of weighted scores for w(q) = (hi - q) / (hi - lo).

    Requires hi > lo. The weight falls linearly from 1 at the global
    minimum to 0 at the global maximum.
    """
    w = (hi - scores) / (hi - lo)
    return float(w.sum()), float((w * scores).sum())


def kde_gaussian(samples: np.ndarray, grid: np.ndarray, bandwidth: float) -> np.ndarray:
    """Gaussian kernel density estimate evaluated on ``grid``.

    Processes the grid in blocks to bound the (block x samples) temporary.
    """
    n = samples.size
    out = np.empty(grid.size, dtype=np.float64)
    norm = 1.0 / (n * bandwidth * _SQRT_TWO_PI)
    block = max(1, 8_000_000 // max(n, 1))
    for start in range(0, grid.size, block):
        g = grid[start : start + block]
        u = (g[:, None] - samples[None, :]) / bandwidth
        out[start : start + block] = np.exp(-0.5 * u * u).sum(axis=1) * norm
    return out
