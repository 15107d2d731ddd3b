# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled per-sample kernels; signatures mirror sqfr._pykernels."""

import numpy as np

from libc.math cimport exp, sqrt, M_PI


def count_below(const double[::1] sorted_scores, const double[::1] thresholds):
    """Number of scores strictly below each threshold (both inputs ascending).

    Binary search per threshold, warm-started at the previous count since
    the thresholds ascend.
    """
    cdef Py_ssize_t n = sorted_scores.shape[0]
    cdef Py_ssize_t t = thresholds.shape[0]
    out = np.empty(t, dtype=np.int64)
    cdef long long[::1] o = out
    cdef Py_ssize_t lo = 0, hi, mid, k
    cdef double threshold
    for k in range(t):
        threshold = thresholds[k]
        hi = n
        while lo < hi:
            mid = (lo + hi) // 2
            if sorted_scores[mid] < threshold:
                lo = mid + 1
            else:
                hi = mid
        o[k] = lo
    return out


def low_weight_sums(const double[::1] scores, double lo, double hi):
    """Sum of weights and of weighted scores for w(q) = (hi - q) / (hi - lo)."""
    cdef double span = hi - lo
    cdef double wsum = 0.0, wqsum = 0.0, w
    cdef Py_ssize_t i
    for i in range(scores.shape[0]):
        w = (hi - scores[i]) / span
        wsum += w
        wqsum += w * scores[i]
    return wsum, wqsum


def kde_gaussian(const double[::1] samples, const double[::1] grid, double bandwidth):
    """Gaussian kernel density estimate evaluated on ``grid``."""
    cdef Py_ssize_t n = samples.shape[0]
    cdef Py_ssize_t m = grid.shape[0]
    out = np.empty(m, dtype=np.float64)
    cdef double[::1] o = out
    cdef double norm = 1.0 / (n * bandwidth * sqrt(2.0 * M_PI))
    cdef double inv_h = 1.0 / bandwidth
    cdef double acc, u
    cdef Py_ssize_t i, j
    for j in range(m):
        acc = 0.0
        for i in range(n):
            u = (grid[j] - samples[i]) * inv_h
            acc += exp(-0.5 * u * u)
        o[j] = acc * norm
    return out
