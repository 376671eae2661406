"""Input validation helpers for design matrices."""

import numpy as np
from sklearn.utils import check_array

from .cycle import DESIGN_BOUNDS, DESIGN_VARIABLES, EngineDesign


def check_designs(X, bounds=DESIGN_BOUNDS, enforce_bounds=True):
    """Validate an ``(n_samples, 8)`` design matrix and return it as float64.

    Columns follow ``DESIGN_VARIABLES``. A single design may be passed as a
    1-D sequence of length 8.
    """
    X = np.asarray(X, dtype=float) if not hasattr(X, "shape") else X
    if getattr(X, "ndim", 2) == 1:
        X = np.asarray(X).reshape(1, -1)
    X = check_array(X, dtype=np.float64, ensure_all_finite=True)
    if X.shape[1] != len(DESIGN_VARIABLES):
        raise ValueError(
            f"expected {len(DESIGN_VARIABLES)} columns {DESIGN_VARIABLES}, got {X.shape[1]}"
        )
    if enforce_bounds:
        problems = []
        for row, x in enumerate(X):
            bad = EngineDesign.from_sequence(x).bound_violations(bounds)
            problems.extend(f"row {row}: {b}" for b in bad)
        if problems:
            raise ValueError("design out of bounds: " + "; ".join(problems))
    return X


def check_bounds(bounds):
    bounds = tuple((float(lo), float(hi)) for lo, hi in bounds)
    if len(bounds) != len(DESIGN_VARIABLES):
        raise ValueError(f"expected {len(DESIGN_VARIABLES)} (low, high) pairs")
    for name, (lo, hi) in zip(DESIGN_VARIABLES, bounds):
        if not lo <= hi:
            raise ValueError(f"bound for {name} has low > high")
    return bounds
