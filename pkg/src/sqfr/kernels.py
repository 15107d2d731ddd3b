"""Backend selection for the per-sample kernels.

The compiled extension (sqfr._ckernels, built from Cython) is used when it
imports cleanly; otherwise the numpy fallback (sqfr._pykernels) takes over.
Set the environment variable SQFR_PURE_PYTHON=1 before import to force the
fallback. Both backends compute the same quantities; only floating-point
summation order differs, so results agree to ~1e-12 relative.
"""

from __future__ import annotations

import os

import numpy as np

if os.environ.get("SQFR_PURE_PYTHON"):
    from . import _pykernels as _impl

    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        from . import _pykernels as _impl  # type: ignore[no-redef]

        BACKEND = "python"


def _c1d(a) -> np.ndarray:
    return np.ascontiguousarray(a, dtype=np.float64)


def count_below(sorted_scores, thresholds) -> np.ndarray:
    """Per threshold, how many scores are strictly below it.

    Both arrays must be sorted ascending. Strict comparison is the single
    place the discard predicate lives: a threshold equal to the smallest
    score discards nothing.
    """
    return _impl.count_below(_c1d(sorted_scores), _c1d(thresholds))


def low_weight_sums(scores, lo: float, hi: float) -> tuple[float, float]:
    """(sum of weights, sum of weight*score) for w(q) = (hi - q)/(hi - lo)."""
    return _impl.low_weight_sums(_c1d(scores), float(lo), float(hi))


def kde_gaussian(samples, grid, bandwidth: float) -> np.ndarray:
    """Gaussian KDE of ``samples`` evaluated at ``grid`` points."""
    return _impl.kde_gaussian(_c1d(samples), _c1d(grid), float(bandwidth))
