"""Input validation helpers shared by the domain types and estimators."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import DimensionMismatchError, NotUnitNormError, ZeroVectorError

#: Policies for enforcing the unit-norm requirement on ingested vectors.
NORM_POLICIES = ("renormalize", "assert_unit")

# Renormalizing must be a bitwise no-op on already normalized data, otherwise
# read -> write -> read round trips would drift by one ulp per pass.
_ALREADY_UNIT_TOL = 1e-12
_ASSERT_UNIT_TOL = 1e-6
_ZERO_NORM_TOL = 1e-12


def as_float_matrix(x, name: str = "X") -> np.ndarray:
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be a 2-d array, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise ValueError(f"{name} contains non-finite values")
    return arr


def as_float_vector(x, name: str = "x") -> np.ndarray:
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be a 1-d array, got shape {arr.shape}")
    return arr


def check_dim_match(dim_a: int, dim_b: int, context: str = "") -> None:
    if dim_a != dim_b:
        suffix = f" ({context})" if context else ""
        raise DimensionMismatchError(
            f"dimension mismatch: {dim_a} vs {dim_b}{suffix}"
        )


def unitize_rows(
    matrix: np.ndarray,
    norm_policy: str = "renormalize",
    ids: Sequence[str] | None = None,
) -> np.ndarray:
    """Return ``matrix`` with every row scaled to unit Euclidean norm.

    ``renormalize`` divides each row by its norm; ``assert_unit`` first
    rejects rows whose norm deviates from 1 by more than 1e-6. Rows already
    within 1e-12 of unit norm are passed through unchanged so the operation
    is bitwise idempotent. Near-zero rows cannot be normalized and raise
    ``ZeroVectorError``.
    """
    if norm_policy not in NORM_POLICIES:
        raise ValueError(f"norm_policy must be one of {NORM_POLICIES}")
    matrix = as_float_matrix(matrix, "vectors")
    norms = np.linalg.norm(matrix, axis=1)

    def _label(row: int) -> str:
        return repr(ids[row]) if ids is not None else f"row {row}"

    zero = np.flatnonzero(norms <= _ZERO_NORM_TOL)
    if zero.size:
        raise ZeroVectorError(f"cannot normalize zero vector at {_label(zero[0])}")
    deviation = np.abs(norms - 1.0)
    if norm_policy == "assert_unit":
        bad = np.flatnonzero(deviation > _ASSERT_UNIT_TOL)
        if bad.size:
            raise NotUnitNormError(
                f"vector at {_label(bad[0])} has norm {norms[bad[0]]:.9g}, "
                f"expected 1 within {_ASSERT_UNIT_TOL:g}"
            )
    off = deviation > _ALREADY_UNIT_TOL
    if not off.any():
        return matrix
    out = matrix.copy()
    out[off] /= norms[off, None]
    return out
