"""Linear SVM transfer baseline trained by seeded stochastic subgradient descent.

The objective is the standard primal hinge form

    (1 / (2*C*n)) * ||w||^2 + (1/n) * sum_i max(0, 1 - y_i (w.x_i + b))

minimized Pegasos style with step 1/(lambda*t), lambda = 1/(C*n), visiting
samples in a fresh seeded permutation each epoch. The bias is unregularized
and shares the 1/(lambda*t) step. That schedule is tuned to unit-norm
features (everything in this toolkit is a unit embedding); on raw
large-scale features the early bias steps are proportionally large and the
uncontracted bias coordinate forgets them only slowly.

Training is strictly sequential so a fixed (data, C, epochs, seed) tuple
produces bit-identical weights.

Classification uses the raw embedding vectors as features. An alternative
reading of the transfer protocol classifies pairwise difference vectors
instead; that variant is intentionally not implemented here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._validation import as_float_matrix, check_dim_match
from .errors import SingleClassError

DEFAULT_GRID = (0.1, 1.0, 10.0)
DEFAULT_EPOCHS = 200


@dataclass(frozen=True)
class TrainMeta:
    epochs: int
    seed: int
    val_accuracy: float | None = None


@dataclass(frozen=True, eq=False)
class LinearModel:
    """Fitted linear classifier: predict the sign of ``weights . x + bias``."""

    weights: np.ndarray
    bias: float
    c_used: float
    train_meta: TrainMeta

    def __post_init__(self):
        weights = np.array(self.weights, dtype=np.float64)
        weights.flags.writeable = False
        object.__setattr__(self, "weights", weights)

    def decision(self, X) -> np.ndarray:
        X = as_float_matrix(X)
        check_dim_match(self.weights.shape[0], X.shape[1], "decision")
        return X @ self.weights + self.bias

    def predict(self, X) -> np.ndarray:
        return np.where(self.decision(X) >= 0.0, 1, -1)


def _check_binary(y: np.ndarray) -> np.ndarray:
    y = np.asarray(y, dtype=np.float64)
    values = set(np.unique(y).tolist())
    if not values <= {-1.0, 1.0}:
        raise ValueError(f"labels must be in {{-1, +1}}, got {sorted(values)}")
    if len(values) < 2:
        raise SingleClassError("training data contains a single class")
    return y


def train_linear_svm(
    X,
    y,
    C: float = 1.0,
    epochs: int = DEFAULT_EPOCHS,
    seed: int = 0,
) -> LinearModel:
    """Train on ±1 labels; see the module docstring for the exact procedure."""
    X = as_float_matrix(X)
    y = _check_binary(y)
    if y.shape[0] != X.shape[0]:
        raise ValueError("X and y must have the same number of rows")
    if C <= 0:
        raise ValueError("C must be positive")
    n, d = X.shape
    lam = 1.0 / (C * n)
    w = np.zeros(d)
    b = 0.0
    t = 0
    rng = np.random.default_rng(seed)
    for _ in range(epochs):
        for i in rng.permutation(n):
            t += 1
            eta = 1.0 / (lam * t)
            if y[i] * (X[i] @ w + b) < 1.0:
                w = (1.0 - eta * lam) * w + (eta * y[i]) * X[i]
                b = b + eta * y[i]
            else:
                w = (1.0 - eta * lam) * w
    return LinearModel(
        weights=w, bias=float(b), c_used=float(C), train_meta=TrainMeta(epochs, seed)
    )


def accuracy(model: LinearModel, X, y) -> float:
    y = np.asarray(y)
    if y.shape[0] == 0:
        raise ValueError("cannot score an empty set")
    return float((model.predict(X) == y).mean())


@dataclass(frozen=True, eq=False)
class TuneResult:
    test_accuracy: float
    model: LinearModel
    val_accuracies: tuple[tuple[float, float], ...]  # (C, validation accuracy)


def tune_and_evaluate(
    train: tuple[np.ndarray, np.ndarray],
    val: tuple[np.ndarray, np.ndarray],
    test: tuple[np.ndarray, np.ndarray],
    grid=DEFAULT_GRID,
    epochs: int = DEFAULT_EPOCHS,
    seed: int = 0,
) -> TuneResult:
    """Pick C on the validation split, retrain on train+val, score on test.

    Ties on validation accuracy go to the smaller C (stronger
    regularization) for reproducibility.
    """
    grid = tuple(grid)
    if not grid:
        raise ValueError("C grid must be non-empty")
    X_tr, y_tr = train
    X_val, y_val = val
    X_te, y_te = test

    best_c = None
    best_acc = -1.0
    val_accuracies = []
    for c in sorted(grid):
        model = train_linear_svm(X_tr, y_tr, C=c, epochs=epochs, seed=seed)
        acc = accuracy(model, X_val, y_val)
        val_accuracies.append((float(c), acc))
        if acc > best_acc:
            best_acc = acc
            best_c = c

    X_full = np.concatenate([as_float_matrix(X_tr), as_float_matrix(X_val)])
    y_full = np.concatenate([np.asarray(y_tr), np.asarray(y_val)])
    final = train_linear_svm(X_full, y_full, C=best_c, epochs=epochs, seed=seed)
    final = LinearModel(
        weights=final.weights,
        bias=final.bias,
        c_used=final.c_used,
        train_meta=TrainMeta(epochs, seed, val_accuracy=best_acc),
    )
    return TuneResult(
        test_accuracy=accuracy(final, X_te, y_te),
        model=final,
        val_accuracies=tuple(val_accuracies),
    )


def stratified_split(
    y, train_frac: float = 0.8, seed: int = 0
) -> tuple[np.ndarray, np.ndarray]:
    """Seeded per-class split into (train indices, held-out indices).

    Classes are processed in sorted order; within each class the indices
    are shuffled by one ``default_rng(seed)`` stream and the first
    ``round(train_frac * n_class)`` go to train (clipped so both sides are
    non-empty when the class has at least 2 items).
    """
    y = np.asarray(y)
    if not 0.0 < train_frac < 1.0:
        raise ValueError("train_frac must lie strictly between 0 and 1")
    rng = np.random.default_rng(seed)
    train_parts, held_parts = [], []
    for value in np.unique(y):
        idx = np.flatnonzero(y == value)
        idx = idx[rng.permutation(idx.size)]
        n_train = int(round(train_frac * idx.size))
        if idx.size >= 2:
            n_train = min(max(n_train, 1), idx.size - 1)
        train_parts.append(idx[:n_train])
        held_parts.append(idx[n_train:])
    return (
        np.sort(np.concatenate(train_parts)),
        np.sort(np.concatenate(held_parts)),
    )
