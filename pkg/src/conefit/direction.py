"""Closed-form difficulty direction fit, margins and compatibility scores.

Given unit embeddings and K pairwise order constraints "i easier than j",
the direction that maximizes the total slack sum(xi_k) subject to
||w|| = 1, with xi_k = -w.(x_i - x_j), is the normalized sum of the
constraint difference vectors:

    w = s / ||s||,   s = sum_k (x_{j_k} - x_{i_k})

The optimal objective equals ||s||, so the whole fit costs one pass over
the constraints. For constraints built from a single level pair the sum
telescopes to n_a * n_b * (mu_b - mu_a), which is why compatibility
scores are computed straight from the two level centroids.

Projecting an item onto w (``project``) gives its difficulty coordinate;
larger means harder. The apex of the cone, the hypothetical simplest
point, is -w.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from ._validation import check_dim_match
from .constraints import ConstraintSet, PerItem, build_constraints
from .data import EmbeddingSet, LabeledDataset
from .errors import (
    DegenerateDirectionError,
    EmptyConstraintSetError,
    EmptyLevelError,
    MissingPairError,
    NoReferenceItemsError,
    SingleLevelError,
)

#: Below this norm of the difference-vector sum the direction is undefined.
DEGENERACY_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class DifficultyDirection:
    """Result of a direction fit.

    Attributes
    ----------
    w : unit vector along which projections order items by difficulty.
    raw_sum : sum of (harder - easier) difference vectors before
        normalization.
    objective : total slack at the optimum, equals ``norm(raw_sum)``.
    mean_margin : ``objective / K``; with unit vectors each margin is at
        most 2, so this lies in [0, 2].
    margins : per-constraint slack ``xi_k = w . (x_harder - x_easier)``.
    """

    w: np.ndarray
    raw_sum: np.ndarray
    objective: float
    mean_margin: float
    margins: np.ndarray

    def __post_init__(self):
        for name in ("w", "raw_sum", "margins"):
            arr = np.array(getattr(self, name), dtype=np.float64)
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)
        if abs(float(np.linalg.norm(self.w)) - 1.0) > 1e-12:
            raise ValueError("w must be unit norm")
        if not -1e-9 <= self.mean_margin <= 2.0 + 1e-9:
            raise ValueError(f"mean margin {self.mean_margin} outside [0, 2]")

    @property
    def apex(self) -> np.ndarray:
        """The hypothetical simplest point; items nearest it are easiest."""
        return -self.w

    @property
    def n_constraints(self) -> int:
        return int(self.margins.shape[0])


def _fit_from_arrays(
    vectors: np.ndarray, easier: np.ndarray, harder: np.ndarray
) -> DifficultyDirection:
    if easier.size == 0:
        raise EmptyConstraintSetError("cannot fit a direction from zero constraints")
    diffs = vectors[harder] - vectors[easier]
    raw_sum = diffs.sum(axis=0)
    scale = float(np.linalg.norm(raw_sum))
    if scale < DEGENERACY_TOL:
        raise DegenerateDirectionError(
            f"difference vectors cancel (norm {scale:.3g} < {DEGENERACY_TOL:g}); "
            "no difficulty direction exists"
        )
    w = raw_sum / scale
    margins = diffs @ w
    return DifficultyDirection(
        w=w,
        raw_sum=raw_sum,
        objective=scale,
        mean_margin=scale / easier.size,
        margins=margins,
    )


def fit_direction(
    embeddings: EmbeddingSet, constraints: ConstraintSet
) -> DifficultyDirection:
    """Solve the direction problem in closed form.

    Raises ``DegenerateDirectionError`` when the difference vectors cancel
    and ``EmptyConstraintSetError`` for K = 0.
    """
    return _fit_from_arrays(embeddings.vectors, constraints.easier, constraints.harder)


def project(w, x):
    """Difficulty coordinate(s) ``w . x``; larger means harder.

    ``x`` may be a single vector or a matrix of row vectors.
    """
    w = np.asarray(w, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    check_dim_match(w.shape[-1], x.shape[-1], "project")
    result = x @ w
    return float(result) if result.ndim == 0 else result


def compatibility_score(
    embeddings: EmbeddingSet,
    dataset: LabeledDataset,
    level_pair: tuple[int, int],
) -> tuple[float, int]:
    """Mean margin of the optimal direction over one level pair.

    Computed from the two level centroids, ``norm(mu_b - mu_a)``, which
    equals the mean margin of the full K = n_a * n_b constraint fit but
    costs O(N * D). Identical centroids make the direction degenerate;
    that is reported as score 0 with a warning rather than an error.

    Returns ``(score, K)``.
    """
    a, b = level_pair
    if a >= b:
        raise ValueError(f"level pair must be ordered easier < harder, got ({a}, {b})")
    idx = np.asarray(
        [embeddings.index_of(item_id) for item_id in dataset.ids], dtype=np.int64
    )
    pos_a = dataset.positions_at(a)
    pos_b = dataset.positions_at(b)
    for rank, pos in ((a, pos_a), (b, pos_b)):
        if not pos.size:
            raise EmptyLevelError(
                f"level {dataset.level_names[rank]!r} (rank {rank}) has no items"
            )
    mu_a = embeddings.vectors[idx[pos_a]].mean(axis=0)
    mu_b = embeddings.vectors[idx[pos_b]].mean(axis=0)
    score = float(np.linalg.norm(mu_b - mu_a))
    k = int(pos_a.size) * int(pos_b.size)
    if score < DEGENERACY_TOL:
        warnings.warn(
            f"levels {dataset.level_names[a]!r} and {dataset.level_names[b]!r} "
            "have identical centroids; compatibility score is 0 and no "
            "difficulty direction exists for this pair",
            RuntimeWarning,
            stacklevel=2,
        )
        return 0.0, k
    return score, k


def item_consistency(
    embeddings: EmbeddingSet, dataset: LabeledDataset, anchor_id: str
) -> float:
    """Mean margin of the direction fit anchored on one item.

    Constraints pit the anchor against every item of strictly lower and
    strictly higher level; a higher value means the anchor's annotation
    agrees better with the cone geometry.
    """
    try:
        constraints = build_constraints(dataset, embeddings, PerItem(anchor_id))
    except (EmptyConstraintSetError, SingleLevelError) as exc:
        raise NoReferenceItemsError(
            f"anchor {anchor_id!r} has no items in lower or higher levels"
        ) from exc
    return fit_direction(embeddings, constraints).mean_margin


def oracle_fit_direction(
    embeddings: EmbeddingSet,
    constraints: ConstraintSet,
    steps: int = 5000,
    step_size: float = 0.1,
    seed: int = 0,
) -> np.ndarray:
    """Numerical solver of the same program, for validating the closed form.

    Plain gradient ascent on the total slack with re-projection onto the
    unit sphere after each step, from a seeded random start. Fixed step
    size, no line search; this exists to validate, not to perform.
    """
    if len(constraints) == 0:
        raise EmptyConstraintSetError("cannot fit a direction from zero constraints")
    vectors = embeddings.vectors
    diffs = vectors[constraints.harder] - vectors[constraints.easier]
    grad = diffs.sum(axis=0)
    if float(np.linalg.norm(grad)) < DEGENERACY_TOL:
        raise DegenerateDirectionError(
            "difference vectors cancel; no difficulty direction exists"
        )
    rng = np.random.default_rng(seed)
    w = rng.standard_normal(vectors.shape[1])
    w /= np.linalg.norm(w)
    for _ in range(steps):
        w = w + step_size * grad
        w /= np.linalg.norm(w)
    return w


@dataclass(frozen=True)
class PairScore:
    """One compatibility entry: a level pair with its score and pair count."""

    easier_name: str
    harder_name: str
    easier_rank: int
    harder_rank: int
    score: float
    n_pairs: int


@dataclass(frozen=True)
class CompatibilityReport:
    """Per-level-pair compatibility of one embedding model.

    ``score_definition`` records which normalization the scores use so
    reports from different tool versions are not silently mixed.
    """

    model_name: str
    dim: int
    entries: tuple[PairScore, ...]
    score_definition: str = "mean_margin"

    def entry_for(self, easier_name: str, harder_name: str) -> PairScore:
        for entry in self.entries:
            if (entry.easier_name, entry.harder_name) == (easier_name, harder_name):
                return entry
        raise MissingPairError(
            f"report {self.model_name!r} has no entry for "
            f"({easier_name}, {harder_name})"
        )


def compatibility_report(
    embeddings: EmbeddingSet,
    dataset: LabeledDataset,
    model_name: str,
    level_pairs: list[tuple[int, int]] | None = None,
) -> CompatibilityReport:
    """Score every requested level pair (default: all present pairs a < b)."""
    if level_pairs is None:
        present = dataset.present_ranks()
        level_pairs = [(a, b) for a in present for b in present if a < b]
    entries = []
    for a, b in level_pairs:
        score, k = compatibility_score(embeddings, dataset, (a, b))
        entries.append(
            PairScore(
                easier_name=dataset.level_names[a],
                harder_name=dataset.level_names[b],
                easier_rank=a,
                harder_rank=b,
                score=score,
                n_pairs=k,
            )
        )
    return CompatibilityReport(
        model_name=model_name, dim=embeddings.dim, entries=tuple(entries)
    )
