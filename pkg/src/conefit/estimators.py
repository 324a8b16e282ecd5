"""Scikit-learn estimator front ends for the direction fit and the SVM.

Kept in their own module so importing the core (and the command line tool)
does not pay for the scikit-learn import; ``conefit.__init__`` re-exports
both classes lazily.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.exceptions import NotFittedError

from ._validation import as_float_matrix, check_dim_match, unitize_rows
from .direction import _fit_from_arrays
from .errors import SingleClassError, SingleLevelError
from .svm import DEFAULT_EPOCHS, train_linear_svm


class ConeDirection(BaseEstimator, TransformerMixin):
    """Transformer that learns the difficulty direction of a labeled space.

    ``fit(X, y)`` expects row-vector embeddings and integer difficulty
    ranks; ``transform(X)`` returns each item's difficulty coordinate as a
    single column. Rows are brought to unit norm according to
    ``norm_policy`` before any computation.

    Parameters
    ----------
    mode : "all" (default) or "adjacent". The annotation scale is taken to
        be the sorted distinct values of ``y``, so "adjacent" pairs ranks
        that are consecutive in that revealed scale.
    norm_policy : "renormalize" (default) or "assert_unit".

    Attributes (after fit)
    ----------------------
    direction_ : unit vector; projections onto it order items by difficulty.
    apex_ : the hypothetical simplest point, ``-direction_``.
    objective_, mean_margin_, margins_, raw_sum_, n_constraints_ : see
        :class:`conefit.DifficultyDirection`.
    """

    def __init__(self, mode: str = "all", norm_policy: str = "renormalize"):
        self.mode = mode
        self.norm_policy = norm_policy

    def _pairs(self, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        levels = np.unique(y)
        if levels.size < 2:
            raise SingleLevelError("y must contain at least 2 distinct levels")
        if self.mode == "all":
            rank_pairs = [
                (a, b) for ia, a in enumerate(levels) for b in levels[ia + 1 :]
            ]
        elif self.mode == "adjacent":
            rank_pairs = list(zip(levels[:-1], levels[1:]))
        else:
            raise ValueError(f"mode must be 'all' or 'adjacent', got {self.mode!r}")
        easier_parts, harder_parts = [], []
        for a, b in rank_pairs:
            pos_a = np.flatnonzero(y == a)
            pos_b = np.flatnonzero(y == b)
            grid_a, grid_b = np.meshgrid(pos_a, pos_b, indexing="ij")
            easier_parts.append(grid_a.ravel())
            harder_parts.append(grid_b.ravel())
        easier = np.concatenate(easier_parts)
        harder = np.concatenate(harder_parts)
        order = np.lexsort((harder, easier))
        return easier[order], harder[order]

    def fit(self, X, y):
        X = unitize_rows(as_float_matrix(X), self.norm_policy)
        y = np.asarray(y)
        if y.shape[0] != X.shape[0]:
            raise ValueError("X and y must have the same number of rows")
        easier, harder = self._pairs(y)
        fitted = _fit_from_arrays(X, easier, harder)
        self.n_features_in_ = X.shape[1]
        self.direction_ = fitted.w
        self.raw_sum_ = fitted.raw_sum
        self.objective_ = fitted.objective
        self.mean_margin_ = fitted.mean_margin
        self.margins_ = fitted.margins
        self.apex_ = fitted.apex
        self.n_constraints_ = fitted.n_constraints
        return self

    def transform(self, X) -> np.ndarray:
        self._check_fitted()
        X = unitize_rows(as_float_matrix(X), self.norm_policy)
        check_dim_match(self.n_features_in_, X.shape[1], "transform")
        return (X @ self.direction_).reshape(-1, 1)

    def score(self, X, y) -> float:
        """Mean margin of the fitted direction over constraints from (X, y)."""
        self._check_fitted()
        X = unitize_rows(as_float_matrix(X), self.norm_policy)
        check_dim_match(self.n_features_in_, X.shape[1], "score")
        easier, harder = self._pairs(np.asarray(y))
        return float(((X[harder] - X[easier]) @ self.direction_).mean())

    def _check_fitted(self):
        if not hasattr(self, "direction_"):
            raise NotFittedError("this ConeDirection instance is not fitted yet")


class PegasosSVC(BaseEstimator, ClassifierMixin):
    """Scikit-learn style front end for the seeded subgradient SVM.

    Accepts any two class labels; the lexicographically larger one becomes
    the positive class.
    """

    def __init__(self, C: float = 1.0, epochs: int = DEFAULT_EPOCHS, seed: int = 0):
        self.C = C
        self.epochs = epochs
        self.seed = seed

    def fit(self, X, y):
        y = np.asarray(y)
        self.classes_ = np.unique(y)
        if self.classes_.size != 2:
            raise SingleClassError(
                f"PegasosSVC is binary; got {self.classes_.size} class(es)"
            )
        signed = np.where(y == self.classes_[1], 1.0, -1.0)
        self.model_ = train_linear_svm(
            X, signed, C=self.C, epochs=self.epochs, seed=self.seed
        )
        self.coef_ = self.model_.weights.reshape(1, -1)
        self.intercept_ = np.array([self.model_.bias])
        self.n_features_in_ = self.model_.weights.shape[0]
        return self

    def decision_function(self, X) -> np.ndarray:
        if not hasattr(self, "model_"):
            raise NotFittedError("this PegasosSVC instance is not fitted yet")
        return self.model_.decision(X)

    def predict(self, X) -> np.ndarray:
        positive = self.decision_function(X) >= 0.0
        return np.where(positive, self.classes_[1], self.classes_[0])
