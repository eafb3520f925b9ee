"""Input validation helpers.

All public entry points funnel array-likes through these checks so shape and
range errors surface with consistent messages instead of propagating into the
math. 1-D inputs are accepted as single-column matrices.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import DimensionMismatchError, ValidationError

__all__ = [
    "check_prediction_matrix",
    "check_label_matrix",
    "check_paired",
    "check_vector",
]


def _as_2d(x, name: str) -> np.ndarray:
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise ValidationError(f"{name} must be 2-D, got {arr.ndim}-D")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValidationError(f"{name} must be non-empty, got shape {arr.shape}")
    return arr


def check_prediction_matrix(theta, name: str = "predictions") -> np.ndarray:
    """Validate an (n, z) matrix of probabilities; returns float64 array."""
    arr = _as_2d(theta, name)
    if not np.isfinite(arr).all():
        raise ValidationError(f"{name} contains non-finite entries")
    if (arr < 0.0).any() or (arr > 1.0).any():
        bad = np.argwhere((arr < 0.0) | (arr > 1.0))[0]
        raise ValidationError(
            f"{name}[{bad[0]}, {bad[1]}] = {arr[bad[0], bad[1]]!r} is outside [0, 1]"
        )
    return arr


def check_label_matrix(labels, name: str = "labels") -> np.ndarray:
    """Validate an (n, y) binary matrix; returns an int8 array of 0/1."""
    arr = _as_2d(labels, name)
    if not np.isin(arr, (0.0, 1.0)).all():
        bad = np.argwhere(~np.isin(arr, (0.0, 1.0)))[0]
        raise ValidationError(
            f"{name}[{bad[0]}, {bad[1]}] = {arr[bad[0], bad[1]]!r} is not 0 or 1"
        )
    return arr.astype(np.int8)


def check_paired(theta: np.ndarray, labels: np.ndarray) -> None:
    """Require equal record counts for a prediction/label matrix pair."""
    if theta.shape[0] != labels.shape[0]:
        raise DimensionMismatchError(
            f"predictions have {theta.shape[0]} records but labels have "
            f"{labels.shape[0]}"
        )


def check_vector(values: Sequence[float], name: str, length: int | None = None) -> np.ndarray:
    """Validate a finite 1-D float vector, optionally of fixed length."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise ValidationError(f"{name} must be 1-D")
    if not np.isfinite(arr).all():
        raise ValidationError(f"{name} contains non-finite entries")
    if length is not None and arr.size != length:
        raise DimensionMismatchError(
            f"{name} has length {arr.size}, expected {length}"
        )
    return arr
