"""Input checks for the array-facing estimator API."""

from __future__ import annotations

import math

import numpy as np
from sklearn.utils.validation import check_array

from .exceptions import ShapeMismatchError, StateOutOfRangeError


def check_field_array(X, n_states: int, n_features: int | None = None) -> np.ndarray:
    """Validate a batch of flattened fields, one per row.

    Returns an ``int64`` array of shape ``(n_samples, n_features)``. Values
    must be integral and lie in ``[0, n_states)``.
    """
    X = check_array(X, dtype=None, ensure_2d=True, ensure_min_features=4)
    if X.dtype.kind not in "iub":
        if X.dtype.kind != "f" or not np.all(np.isfinite(X)) or np.any(X != np.round(X)):
            raise StateOutOfRangeError("cell states must be integers")
    X = X.astype(np.int64)
    if X.size and (X.min() < 0 or X.max() >= n_states):
        raise StateOutOfRangeError(f"cell states must lie in [0, {n_states})")
    if n_features is not None and X.shape[1] != n_features:
        raise ShapeMismatchError(
            f"X has {X.shape[1]} features, but the transformer was fitted with {n_features}"
        )
    return X


def resolve_grid_shape(n_features: int, width: int | None, height: int | None) -> tuple[int, int]:
    """Fill in missing grid dimensions; a square grid is assumed when both are absent."""
    if width is None and height is None:
        side = math.isqrt(n_features)
        if side * side != n_features:
            raise ShapeMismatchError(
                f"{n_features} features is not a square grid; pass width and height"
            )
        return side, side
    if width is None:
        width, rem = divmod(n_features, height)
    elif height is None:
        height, rem = divmod(n_features, width)
    else:
        rem = n_features - width * height
    if rem or width * height != n_features:
        raise ShapeMismatchError(f"grid {width}x{height} does not hold {n_features} cells")
    return width, height
